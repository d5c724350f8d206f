/*
  rotospec, certified arithmetic for rotation-composition spectra

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
*/
#include "rotospec/contfrac.hpp"

#include <algorithm>

namespace rotospec {

ContinuedFraction cf_expand(const Rational& x) {
    if (sgn(x) < 0 || x >= 1) throw DomainError("cf_expand requires x in [0, 1)");
    ContinuedFraction cf;
    cf.finite = true;
    cf.a.emplace_back(0);
    BigInt num = x.get_num();
    BigInt den = x.get_den();
    while (sgn(num) != 0) {
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        cf.a.push_back(q);
        den = num;
        num = r;
    }
    // Canonical form: last quotient >= 2 (fold a trailing 1 into its neighbor).
    if (cf.a.size() > 2 && cf.a.back() == 1) {
        cf.a.pop_back();
        cf.a.back() += 1;
    }
    return cf;
}

Rational cf_value(const ContinuedFraction& cf) {
    if (cf.a.empty()) throw DomainError("empty continued fraction");
    Rational v(cf.a.back());
    for (size_t i = cf.a.size() - 1; i-- > 0;) {
        if (sgn(v) == 0) throw DomainError("non-canonical continued fraction");
        v = Rational(cf.a[i]) + 1 / v;
    }
    v.canonicalize();
    return v;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k) {
    std::size_t count = std::min(k, cf.a.size());
    std::vector<Convergent> out;
    out.reserve(count);
    BigInt p_m1(1), p_m2(0);  // p_{-1} = 1, p_{-2} = 0
    BigInt q_m1(0), q_m2(1);  // q_{-1} = 0, q_{-2} = 1
    for (std::size_t i = 0; i < count; ++i) {
        BigInt p = cf.a[i] * p_m1 + p_m2;
        BigInt q = cf.a[i] * q_m1 + q_m2;
        p_m2 = p_m1;
        p_m1 = p;
        q_m2 = q_m1;
        q_m1 = q;
        out.push_back(Convergent{p, q, i});
    }
    return out;
}

namespace {

// Exact quotient stream for (P + sqrt(D)) / Q maintaining Q | D - P^2.
class SurdQuotientStream {
  public:
    explicit SurdQuotientStream(const QuadraticSurd& s) {
        D = s.b * s.b * s.d;
        if (sgn(s.b) > 0) {
            P = s.a;
            Q = s.c;
        } else {
            P = -s.a;
            Q = -s.c;
        }
        BigInt rem = (D - P * P) % Q;
        if (sgn(rem) != 0) {
            BigInt f = abs(Q);
            P *= f;
            D *= f * f;
            Q *= f;
        }
        mpz_sqrt(sqrtD.get_mpz_t(), D.get_mpz_t());
    }

    BigInt next() {
        BigInt a;
        if (sgn(Q) > 0) {
            mpz_fdiv_q(a.get_mpz_t(), BigInt(P + sqrtD).get_mpz_t(), Q.get_mpz_t());
        } else {
            mpz_fdiv_q(a.get_mpz_t(), BigInt(P + sqrtD + 1).get_mpz_t(), Q.get_mpz_t());
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
        return a;
    }

  private:
    BigInt P, Q, D, sqrtD;
};

// Shared prefix of the expansions of an exact rational enclosure [lo, hi]
// with lo < x < hi. Emits quotients while both endpoints agree.
ContinuedFraction cf_of_rational_enclosure(Rational lo, Rational hi, std::size_t k,
                                           const char* fail_msg) {
    ContinuedFraction cf;
    cf.finite = false;
    while (cf.a.size() < k) {
        BigInt fl_lo, fl_hi;
        mpz_fdiv_q(fl_lo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(fl_hi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        if (fl_lo != fl_hi) throw PrecisionError(fail_msg);
        cf.a.push_back(fl_lo);
        Rational flo = lo - Rational(fl_lo);
        Rational fhi = hi - Rational(fl_lo);
        if (sgn(flo) == 0 || sgn(fhi) == 0) throw PrecisionError(fail_msg);
        // 1/(x - a) flips the orientation
        Rational nlo = 1 / fhi;
        Rational nhi = 1 / flo;
        lo = nlo;
        hi = nhi;
        lo.canonicalize();
        hi.canonicalize();
    }
    return cf;
}

}  // namespace

ContinuedFraction cf_stream(const RotationNumber& x, std::size_t k, const PrecisionPolicy&) {
    if (k == 0) throw DomainError("cf_stream requires k >= 1");
    switch (x.kind()) {
        case RotationNumber::Kind::Rational: {
            ContinuedFraction full = cf_expand(x.rational_value());
            if (k > full.a.size()) {
                std::string seen = "[";
                for (size_t i = 0; i < full.a.size(); ++i) {
                    seen += (i ? (i == 1 ? ";" : ",") : "") + full.a[i].get_str();
                }
                throw ExpansionExhausted("finite expansion exhausted after " + seen + "]");
            }
            ContinuedFraction cf;
            cf.finite = k == full.a.size();
            cf.a.assign(full.a.begin(), full.a.begin() + static_cast<long>(k));
            return cf;
        }
        case RotationNumber::Kind::Surd: {
            SurdQuotientStream stream(x.surd_value());
            ContinuedFraction cf;
            cf.finite = false;
            for (std::size_t i = 0; i < k; ++i) cf.a.push_back(stream.next());
            return cf;
        }
        case RotationNumber::Kind::Liouville: {
            const auto& lv = x.liouville_levels();
            long J = lv.depth();
            Rational lo = lv.partial[J - 1];
            Rational hi = lo + lv.tail_upper(J);
            return cf_of_rational_enclosure(lo, hi, k,
                                            "insufficient precision: liouville materialization "
                                            "cannot certify that many quotients");
        }
        case RotationNumber::Kind::Ball:
        default: {
            const auto& b = x.ball_value();
            Rational c = b.center.to_rational();
            Rational r = b.radius.to_rational();
            return cf_of_rational_enclosure(c - r, c + r, k,
                                            "insufficient precision: ball straddles a quotient "
                                            "boundary");
        }
    }
}

std::vector<Convergent> convergents_up_to(const RotationNumber& x, const BigInt& horizon,
                                          const PrecisionPolicy& policy) {
    std::size_t k = 16;
    for (;;) {
        ContinuedFraction cf = cf_stream(x, k, policy);
        auto cv = convergents(cf, k);
        if (!cv.empty() && cv.back().q > horizon) {
            // trim to the first convergent past the horizon
            std::size_t end = 0;
            while (end < cv.size() && cv[end].q <= horizon) ++end;
            cv.resize(std::min(cv.size(), end + 1));
            return cv;
        }
        if (cf.finite) throw ExpansionExhausted("expansion exhausted before horizon");
        if (k > (1u << 20)) throw PrecisionError("insufficient convergents for horizon");
        k *= 2;
    }
}

BestApproxBounds best_approx_lower_bound(const RotationNumber& x, const BigInt& horizon,
                                         const PrecisionPolicy& policy) {
    if (horizon < 1) throw DomainError("horizon must be >= 1");
    BestApproxBounds out;
    if (x.is_rational()) {
        const Rational& v = x.rational_value();
        RationalPeriodReport rep;
        rep.q = v.get_den();
        rep.min_nonzero = Rational(1, v.get_den());
        out.rational_period = rep;
        return out;
    }
    auto cv = convergents_up_to(x, horizon, policy);
    mpfr_prec_t prec = policy.initial_bits;
    for (std::size_t i = 0; i + 1 < cv.size(); ++i) {
        BigInt lo = cv[i].q;
        BigInt hi = cv[i + 1].q - 1;
        if (hi > horizon) hi = horizon;
        if (lo > hi) continue;  // repeated denominator (q_0 = q_1 = 1)
        BestApproxRange range;
        range.n_lo = lo;
        range.n_hi = hi;
        range.bound = Rational(BigInt(1), cv[i].q + cv[i + 1].q);
        range.bound.canonicalize();
        range.bound_log2 = LogMagnitude::of_rational(range.bound, prec);
        range.witness = cv[i];
        out.ranges.push_back(std::move(range));
        if (cv[i + 1].q > horizon) break;
    }
    return out;
}

ExponentEstimate irrationality_exponent_estimate(const RotationNumber& x, std::size_t K,
                                                 const PrecisionPolicy& policy) {
    if (K < 3) throw DomainError("need at least 3 convergents");
    ExponentEstimate est;
    mpfr_prec_t prec = policy.initial_bits;

    // log2 q for the available best-approximation denominators
    std::vector<Real> logs;
    if (x.kind() == RotationNumber::Kind::Liouville) {
        const auto& lv = x.liouville_levels();
        std::size_t n = std::min<std::size_t>(K, static_cast<std::size_t>(lv.depth()));
        for (std::size_t j = 1; j <= n; ++j) {
            logs.push_back(LogMagnitude::of_rational(Rational(lv.q[j - 1]), prec).hi());
        }
        if (n < K) logs.push_back(lv.log_q_next.hi());  // one level past the exact range
    } else {
        ContinuedFraction cf = cf_stream(x, K + 1, policy);
        for (const auto& c : convergents(cf, K + 1)) {
            if (c.q < 2) continue;
            logs.push_back(LogMagnitude::of_rational(Rational(c.q), prec).hi());
        }
    }
    if (logs.size() < 2) throw PrecisionError("insufficient convergents for exponent estimate");

    for (std::size_t i = 0; i + 1 < logs.size(); ++i) {
        Real ratio(prec);
        mpfr_div(ratio.get(), logs[i + 1].get(), logs[i].get(), MPFR_RNDN);
        est.ratios.push_back(ratio.to_double());
    }
    est.estimate = *std::max_element(est.ratios.begin(), est.ratios.end());

    bool tail_monotone = true;
    std::size_t tail = std::min<std::size_t>(3, est.ratios.size() - 1);
    for (std::size_t i = est.ratios.size() - tail; i < est.ratios.size(); ++i) {
        if (est.ratios[i] < est.ratios[i - 1]) tail_monotone = false;
    }
    bool last_is_max = est.ratios.back() >= est.estimate - 1e-12;
    est.trend = (tail_monotone && last_is_max && est.ratios.back() >= 1.5)
                    ? GrowthTrend::Increasing
                    : GrowthTrend::Bounded;
    return est;
}

}  // namespace rotospec

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
#include "rotospec/certificates.hpp"

#include <algorithm>

namespace rotospec {

ConstructionResult construct_liouville(long m, long depth, std::optional<Rational> alpha_override,
                                       long max_bits) {
    auto levels = materialize_liouville(m, depth, max_bits);
    Rational alpha = alpha_override.value_or(Rational(1, m));
    if (sgn(alpha) <= 0 || alpha >= 1) throw DomainError("witness alpha must lie in (0, 1)");

    LiouvilleWitness witness;
    witness.alpha = alpha;
    for (long j = 1; j <= levels->depth(); ++j) {
        const Rational& s = levels->partial[static_cast<std::size_t>(j - 1)];
        witness.approximants.push_back(
            Convergent{s.get_num(), s.get_den(), static_cast<std::size_t>(j - 1)});
    }

    LiouvilleConstruction construction;
    construction.m = m;
    construction.requested_depth = depth;
    construction.levels = levels;
    construction.truncated = levels->truncated;
    mpfr_prec_t prec = 128;
    for (long j = 1; j <= levels->depth(); ++j) {
        construction.q_log2.push_back(
            LogMagnitude::of_rational(Rational(levels->q[static_cast<std::size_t>(j - 1)]), prec));
    }
    construction.q_log2.push_back(levels->log_q_next);

    return ConstructionResult{RotationNumber::liouville(levels), std::move(witness),
                              std::move(construction)};
}

namespace {

// Certified log2 enclosure of |x - p/q|, or nullopt when the sign cannot be
// resolved (reported as a precision failure, not a fail).
std::optional<LogMagnitude> distance_to_rational_log2(const RotationNumber& x, const Rational& r,
                                                      const PrecisionPolicy& policy) {
    mpfr_prec_t prec = policy.initial_bits;
    switch (x.kind()) {
        case RotationNumber::Kind::Rational: {
            Rational d = x.rational_value() - r;
            d.canonicalize();
            if (sgn(d) < 0) d = -d;
            if (sgn(d) == 0) return std::nullopt;  // exact hit: a rational is not irrational
            return LogMagnitude::of_rational(d, prec);
        }
        case RotationNumber::Kind::Surd: {
            const QuadraticSurd& s = x.surd_value();
            QuadraticSurd diff = s.scale_sub(BigInt(1), r);
            if (diff.cmp_rational(Rational(0)) < 0) diff = diff.neg_plus_int(BigInt(0));
            for (int round = 0;; ++round) {
                Interval e = diff.enclosure(policy.bits_at(round));
                if (e.is_positive()) return LogMagnitude::of_interval(e, policy.bits_at(round));
                if (round >= policy.max_refinements) return std::nullopt;
            }
        }
        case RotationNumber::Kind::Liouville: {
            const auto& lv = x.liouville_levels();
            long J = lv.depth();
            // The witness's own partial sums get the tight structural tail.
            for (long j = 1; j <= J; ++j) {
                if (lv.partial[static_cast<std::size_t>(j - 1)] == r) return lv.tail_log2(j, prec);
            }
            Rational lo = lv.partial[J - 1] - r;
            lo.canonicalize();
            Rational hi = lo + lv.tail_upper(J);
            if (sgn(lo) > 0) {
                LogMagnitude llo = LogMagnitude::of_rational(lo, prec);
                LogMagnitude lhi = LogMagnitude::of_rational(hi, prec);
                return LogMagnitude::of_log2_bounds(llo.lo(), lhi.hi());
            }
            if (sgn(hi) < 0) {
                LogMagnitude llo = LogMagnitude::of_rational(-hi, prec);
                LogMagnitude lhi = LogMagnitude::of_rational(-lo, prec);
                return LogMagnitude::of_log2_bounds(llo.lo(), lhi.hi());
            }
            return std::nullopt;  // r inside the enclosure: sign unresolved
        }
        case RotationNumber::Kind::Ball:
        default: {
            Interval e = x.enclosure(prec).sub_rational(r).abs_value();
            if (e.is_positive()) return LogMagnitude::of_interval(e, prec);
            return std::nullopt;
        }
    }
}

}  // namespace

WitnessVerification verify_liouville_witness(const RotationNumber& x, const LiouvilleWitness& w,
                                             const PrecisionPolicy& policy) {
    if (sgn(w.alpha) <= 0 || w.alpha >= 1) throw DomainError("witness alpha must lie in (0, 1)");
    WitnessVerification out;
    out.all_pass = true;
    mpfr_prec_t prec = policy.initial_bits;
    LogMagnitude log_alpha = LogMagnitude::of_rational(w.alpha, prec);
    std::size_t j = 0;
    for (const auto& appr : w.approximants) {
        ++j;
        if (sgn(appr.q) <= 0) throw DomainError("witness approximant needs q > 0");
        ApproximantCheck chk;
        chk.j = j;
        chk.bound_log2 = log_alpha.pow(appr.q);
        Rational r(appr.p, appr.q);
        r.canonicalize();
        auto dist = distance_to_rational_log2(x, r, policy);
        if (!dist) {
            chk.status = CheckStatus::Precision;
            out.all_pass = false;
        } else {
            chk.distance_log2 = *dist;
            auto cmp = dist->leq(chk.bound_log2);
            if (!cmp.has_value()) {
                chk.status = CheckStatus::Precision;
                out.all_pass = false;
            } else if (*cmp) {
                chk.status = CheckStatus::Pass;
            } else {
                chk.status = CheckStatus::Fail;
                out.all_pass = false;
                if (!out.first_fail) out.first_fail = j;
            }
        }
        out.checks.push_back(std::move(chk));
    }
    return out;
}

DiophantineVerification verify_diophantine(const RotationNumber& x,
                                           const DiophantineCertificate& cert, const BigInt& Q,
                                           const PrecisionPolicy& policy) {
    if (x.is_rational()) {
        throw DomainError("rationals are never Diophantine under this definition");
    }
    if (sgn(cert.c) <= 0) throw DomainError("certificate needs c > 0");
    if (cert.delta < 1) throw DomainError("certificate needs delta >= 1");
    if (Q < 1) throw DomainError("verification horizon must be >= 1");

    DiophantineVerification out;
    out.horizon = Q;
    out.justification = x.kind() == RotationNumber::Kind::Surd
                            ? AsymptoticJustification::PeriodicCF
                            : AsymptoticJustification::AssertedByUser;
    mpfr_prec_t prec = policy.initial_bits;
    LogMagnitude log_c = LogMagnitude::of_rational(cert.c, prec);

    auto cv = convergents_up_to(x, Q, policy);
    bool first = true;
    LogMagnitude best_margin;
    for (const auto& conv : cv) {
        if (conv.q > Q) break;
        if (sgn(conv.q) <= 0) continue;
        // q^delta * ||q*x|| >= c, the equivalent convergent form of the
        // Diophantine bound; best approximations extend it to every q.
        DistanceEnclosure d = multiple_distance(x, conv.q, Rational(0), policy);
        if (d.exact_zero || !d.log2) {
            throw PrecisionError("cannot certify ||q*x|| at q=" + conv.q.get_str());
        }
        LogMagnitude margin =
            LogMagnitude::of_rational(Rational(conv.q), prec).pow_rational(cert.delta).mul(*d.log2);
        auto ok = log_c.leq(margin);
        if (!ok.has_value()) {
            throw PrecisionError("margin straddles c at q=" + conv.q.get_str() +
                                 "; refine the certificate or precision");
        }
        bool record = first;
        if (!first) {
            auto closer = margin.less(best_margin);
            record = closer.value_or(false);
        }
        if (record) {
            best_margin = margin;
            out.tightest_margin_q = Rational(conv.q);
            if (auto iv = margin.to_interval(prec)) out.tightest_margin = *iv;
            first = false;
        }
        if (!*ok) {
            out.pass = false;
            out.first_violation_q = conv.q;
            // the violating convergent is by definition the tightest
            best_margin = margin;
            out.tightest_margin_q = Rational(conv.q);
            if (auto iv = margin.to_interval(prec)) out.tightest_margin = *iv;
            return out;
        }
    }
    out.pass = true;
    return out;
}

std::optional<DiophantineCertificate> suggest_certificate(const RotationNumber& x, const BigInt& Q,
                                                          const PrecisionPolicy& policy) {
    if (x.is_rational()) return std::nullopt;
    mpfr_prec_t prec = policy.initial_bits;
    std::vector<Convergent> cv;
    try {
        cv = convergents_up_to(x, Q, policy);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::optional<Real> min_lo;
    for (const auto& conv : cv) {
        if (conv.q > Q || sgn(conv.q) <= 0) continue;
        DistanceEnclosure d = multiple_distance(x, conv.q, Rational(0), policy);
        if (d.exact_zero || !d.log2) return std::nullopt;
        LogMagnitude margin = LogMagnitude::of_rational(Rational(conv.q), prec).mul(*d.log2);
        if (!min_lo || mpfr_cmp(margin.lo().get(), min_lo->get()) < 0) {
            min_lo = margin.lo();
        }
    }
    if (!min_lo) return std::nullopt;
    // c = (255/256) * 2^min_lo, floored into a rational
    Real c_real(prec);
    mpfr_exp2(c_real.get(), min_lo->get(), MPFR_RNDD);
    mpfr_mul_ui(c_real.get(), c_real.get(), 255, MPFR_RNDD);
    mpfr_div_ui(c_real.get(), c_real.get(), 256, MPFR_RNDD);
    if (c_real.sign() <= 0) return std::nullopt;
    DiophantineCertificate cert;
    cert.c = c_real.to_rational();
    cert.delta = 1;
    cert.verified_up_to_q = Q;
    cert.justification = x.kind() == RotationNumber::Kind::Surd
                             ? AsymptoticJustification::PeriodicCF
                             : AsymptoticJustification::AssertedByUser;
    return cert;
}

}  // namespace rotospec

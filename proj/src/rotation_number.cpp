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
#include "rotospec/rotation_number.hpp"

#include <cctype>
#include <sstream>

namespace rotospec {

// ---------------------------------------------------------------------------
// QuadraticSurd
// ---------------------------------------------------------------------------

bool is_perfect_square(const BigInt& d) {
    return sgn(d) >= 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

void QuadraticSurd::normalize() {
    if (sgn(c) == 0) throw DomainError("surd denominator must be nonzero");
    if (sgn(b) == 0) throw DomainError("surd with b = 0 is rational; use a rational angle");
    if (sgn(d) <= 0 || is_perfect_square(d)) {
        throw DomainError("surd radicand must be positive and non-square");
    }
    // Pull small square factors out of the radicand so equal values share a
    // canonical form (sqrt(8) -> 2*sqrt(2)).
    for (long f = 2; f <= 1000; ++f) {
        BigInt f2(f);
        f2 *= f;
        while (mpz_divisible_p(d.get_mpz_t(), f2.get_mpz_t())) {
            d /= f2;
            b *= f;
        }
        if (f2 > d) break;
    }
    if (sgn(c) < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    BigInt g = gcd(gcd(abs(a), abs(b)), c);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
}

// floor((a + b*sqrt(d)) / c) for c > 0, exact: b*sqrt(d) is irrational, so
// floor(b*sqrt(d)) = sgn-adjusted isqrt and the fractional part never
// completes a to a multiple of c.
BigInt QuadraticSurd::floor() const {
    BigInt t = b * b * d;
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
    BigInt fb = (sgn(b) > 0) ? s : BigInt(-s - 1);
    BigInt num = a + fb;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
    return q;
}

QuadraticSurd QuadraticSurd::scale_sub(const BigInt& n, const Rational& y) const {
    const BigInt& yn = y.get_num();
    const BigInt& yd = y.get_den();
    QuadraticSurd r{n * a * yd - yn * c, n * b * yd, c * yd, d};
    r.normalize();
    return r;
}

QuadraticSurd QuadraticSurd::sub_int(const BigInt& k) const {
    QuadraticSurd r{a - k * c, b, c, d};
    r.normalize();
    return r;
}

QuadraticSurd QuadraticSurd::neg_plus_int(const BigInt& k) const {
    QuadraticSurd r{k * c - a, -b, c, d};
    r.normalize();
    return r;
}

int QuadraticSurd::cmp_rational(const Rational& r) const {
    // sign of (a + b*sqrt(d))/c - p/q  ==  sign of A + B*sqrt(d),
    // A = q*a - p*c, B = q*b (c > 0, q > 0).
    BigInt A = r.get_den() * a - r.get_num() * c;
    BigInt B = r.get_den() * b;
    int sA = sgn(A), sB = sgn(B);
    if (sB == 0) return sA;
    if (sA == 0) return sB;
    if (sA > 0 && sB > 0) return 1;
    if (sA < 0 && sB < 0) return -1;
    // Opposite signs: compare A^2 against B^2*d on the dominant side.
    BigInt A2 = A * A;
    BigInt B2d = B * B * d;
    if (sA > 0) return A2 > B2d ? 1 : -1;  // A > 0, B < 0 (equality impossible)
    return B2d > A2 ? 1 : -1;              // A < 0, B > 0
}

Interval QuadraticSurd::enclosure(mpfr_prec_t prec) const {
    Interval root = Interval::sqrt_bigint(d, prec + 16);
    Interval num = root.mul_bigint(b).add_rational(Rational(a));
    return num.mul(Interval::point_rational(Rational(1, 1) / Rational(c), prec + 16));
}

std::string QuadraticSurd::str() const {
    std::ostringstream os;
    os << "(" << a.get_str() << "+" << b.get_str() << "*sqrt(" << d.get_str() << "))/"
       << c.get_str();
    return os.str();
}

// ---------------------------------------------------------------------------
// Liouville levels
// ---------------------------------------------------------------------------

std::shared_ptr<const LiouvilleLevels> materialize_liouville(long m, long depth, long max_bits) {
    if (m < 2) throw DomainError("liouville construction requires m >= 2");
    if (depth < 1) throw DomainError("liouville depth must be >= 1");
    auto lv = std::make_shared<LiouvilleLevels>();
    lv->m = m;
    lv->requested_depth = depth;

    BigInt qj(m);
    Rational sum(1, m);
    lv->q.push_back(qj);
    lv->partial.push_back(sum);
    while (lv->depth() < depth) {
        // next q = qj^qj; materialize only while it fits the bit budget
        if (!qj.fits_ulong_p()) {
            lv->truncated = true;
            break;
        }
        unsigned long e = qj.get_ui();
        double bits_est = static_cast<double>(e) * (mpz_sizeinbase(qj.get_mpz_t(), 2));
        if (bits_est > static_cast<double>(max_bits)) {
            lv->truncated = true;
            break;
        }
        BigInt qn;
        mpz_pow_ui(qn.get_mpz_t(), qj.get_mpz_t(), e);
        sum += Rational(BigInt(1), qn);
        sum.canonicalize();
        qj = qn;
        lv->q.push_back(qj);
        lv->partial.push_back(sum);
    }
    // log2(q_{J+1}) = q_J * log2(q_J), always derivable from the last exact level.
    const BigInt& last = lv->q.back();
    lv->log_q_next = LogMagnitude::of_rational(Rational(last), 128).pow(last);
    return lv;
}

LogMagnitude LiouvilleLevels::log_q_after(long j, mpfr_prec_t prec) const {
    if (j < 1 || j > depth()) throw DomainError("liouville level out of range");
    if (j < depth()) return LogMagnitude::of_rational(Rational(q[j]), prec);
    return log_q_next;
}

Rational LiouvilleLevels::tail_upper(long j) const {
    if (j < 1 || j > depth()) throw DomainError("liouville level out of range");
    if (j < depth()) {
        // sum_{i>j} 1/q_i <= (1/q_{j+1}) * sum_k m^-k <= 2/q_{j+1}
        Rational t(BigInt(2), q[j]);
        t.canonicalize();
        return t;
    }
    // Beyond the exact range: tail <= 2/q_{j+1} = 2/q_j^{q_j} <= q_j^{-k}
    // for any k <= q_j - 1; pick k small enough to stay representable.
    const BigInt& qj = q[j - 1];
    size_t bits = mpz_sizeinbase(qj.get_mpz_t(), 2);
    long k = std::max(1L, static_cast<long>(4096 / bits));
    if (qj.fits_slong_p()) k = std::min(k, std::max(1L, qj.get_si() - 1));
    BigInt den;
    mpz_pow_ui(den.get_mpz_t(), qj.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(BigInt(1), den);
}

LogMagnitude LiouvilleLevels::tail_log2(long j, mpfr_prec_t prec) const {
    // tail in [1/q_{j+1}, 2/q_{j+1}]
    LogMagnitude lq = log_q_after(j, prec);
    Real lo(prec), hi(prec);
    mpfr_neg(lo.get(), lq.hi().get(), MPFR_RNDD);
    mpfr_si_sub(hi.get(), 1, lq.lo().get(), MPFR_RNDU);
    return LogMagnitude::of_log2_bounds(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// RotationNumber
// ---------------------------------------------------------------------------

RotationNumber RotationNumber::rational(Rational x) {
    return RotationNumber(RationalAngle{frac_part(x)});
}

RotationNumber RotationNumber::surd(BigInt a, BigInt b, BigInt c, BigInt d) {
    QuadraticSurd s{std::move(a), std::move(b), std::move(c), std::move(d)};
    s.normalize();
    BigInt k = s.floor();
    if (sgn(k) != 0) s = s.sub_int(k);
    return RotationNumber(std::move(s));
}

RotationNumber RotationNumber::liouville(std::shared_ptr<const LiouvilleLevels> levels) {
    if (!levels || levels->depth() < 1) throw DomainError("empty liouville materialization");
    return RotationNumber(LiouvilleSymbolic{std::move(levels)});
}

RotationNumber RotationNumber::ball(Real center, Real radius) {
    if (radius.sign() <= 0) throw DomainError("ball radius must be positive");
    return RotationNumber(DecimalBall{std::move(center), std::move(radius)});
}

RotationNumber::Kind RotationNumber::kind() const {
    switch (v_.index()) {
        case 0: return Kind::Rational;
        case 1: return Kind::Surd;
        case 2: return Kind::Liouville;
        default: return Kind::Ball;
    }
}

const Rational& RotationNumber::rational_value() const {
    return std::get<RationalAngle>(v_).value;
}
const QuadraticSurd& RotationNumber::surd_value() const { return std::get<QuadraticSurd>(v_); }
const LiouvilleLevels& RotationNumber::liouville_levels() const {
    return *std::get<LiouvilleSymbolic>(v_).levels;
}
const DecimalBall& RotationNumber::ball_value() const { return std::get<DecimalBall>(v_); }

Interval RotationNumber::enclosure(mpfr_prec_t prec) const {
    switch (kind()) {
        case Kind::Rational:
            return Interval::point_rational(rational_value(), prec);
        case Kind::Surd:
            return surd_value().enclosure(prec);
        case Kind::Liouville: {
            const auto& lv = liouville_levels();
            long J = lv.depth();
            return Interval::of_rational_bounds(lv.partial[J - 1],
                                                lv.partial[J - 1] + lv.tail_upper(J), prec);
        }
        case Kind::Ball:
        default: {
            const auto& b = ball_value();
            mpfr_prec_t p = std::max<mpfr_prec_t>(prec, b.center.prec());
            Real lo(p), hi(p);
            mpfr_sub(lo.get(), b.center.get(), b.radius.get(), MPFR_RNDD);
            mpfr_add(hi.get(), b.center.get(), b.radius.get(), MPFR_RNDU);
            return Interval(std::move(lo), std::move(hi));
        }
    }
}

std::string RotationNumber::descriptor() const {
    switch (kind()) {
        case Kind::Rational: {
            const Rational& r = rational_value();
            return "rational:" + r.get_num().get_str() + "/" + r.get_den().get_str();
        }
        case Kind::Surd:
            return "surd:" + surd_value().str();
        case Kind::Liouville: {
            const auto& lv = liouville_levels();
            return "liouville:" + std::to_string(lv.m) + "," + std::to_string(lv.depth());
        }
        case Kind::Ball:
        default: {
            const auto& b = ball_value();
            return "ball:" + b.center.hex() + "+-" + b.radius.hex();
        }
    }
}

namespace {

BigInt parse_bigint(std::string s) {
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (s.empty()) throw DomainError("empty integer literal");
    BigInt z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0) {
        throw DomainError("unparseable integer: " + s);
    }
    return z;
}

// "(a+b*sqrt(d))/c" with optional signs on a and b.
RotationNumber parse_surd(const std::string& body) {
    auto fail = [&]() -> RotationNumber {
        throw DomainError("unparseable surd descriptor: " + body + " (expected (a+b*sqrt(d))/c)");
    };
    if (body.size() < 10 || body[0] != '(') return fail();
    auto sqrt_pos = body.find("*sqrt(");
    if (sqrt_pos == std::string::npos || sqrt_pos < 3) return fail();
    // b is the maximal sign+digits run ending at "*sqrt("
    size_t i = sqrt_pos;
    while (i > 1 && std::isdigit(static_cast<unsigned char>(body[i - 1]))) --i;
    if (i <= 1 || (body[i - 1] != '+' && body[i - 1] != '-')) return fail();
    --i;
    std::string a_str = body.substr(1, i - 1);
    std::string b_str = body.substr(i, sqrt_pos - i);
    auto close = body.find(')', sqrt_pos + 6);
    if (close == std::string::npos) return fail();
    std::string d_str = body.substr(sqrt_pos + 6, close - (sqrt_pos + 6));
    if (close + 2 >= body.size() || body[close + 1] != ')' || body[close + 2] != '/') return fail();
    std::string c_str = body.substr(close + 3);
    return RotationNumber::surd(parse_bigint(a_str), parse_bigint(b_str), parse_bigint(c_str),
                                parse_bigint(d_str));
}

RotationNumber parse_ball(const std::string& body) {
    auto pos = body.find("+-");
    size_t skip = 2;
    if (pos == std::string::npos) {
        pos = body.find("\xc2\xb1");  // UTF-8 plus-minus
        skip = 2;
    }
    if (pos == std::string::npos) throw DomainError("ball descriptor needs center+-radius");
    std::string cs = body.substr(0, pos);
    std::string rs = body.substr(pos + skip);
    mpfr_prec_t prec = std::max<size_t>(128, 4 * cs.size());
    Real center(prec), radius(prec);
    if (mpfr_set_str(center.get(), cs.c_str(), 0, MPFR_RNDN) != 0) {
        throw DomainError("unparseable ball center: " + cs);
    }
    if (mpfr_set_str(radius.get(), rs.c_str(), 0, MPFR_RNDU) != 0) {
        throw DomainError("unparseable ball radius: " + rs);
    }
    return RotationNumber::ball(std::move(center), std::move(radius));
}

}  // namespace

RotationNumber RotationNumber::parse(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) {
        throw DomainError("angle descriptor needs a form prefix (rational:, surd:, liouville:, ball:)");
    }
    std::string form = descriptor.substr(0, colon);
    std::string body = descriptor.substr(colon + 1);
    if (form == "rational") return RotationNumber::rational(parse_rational(body));
    if (form == "surd") return parse_surd(body);
    if (form == "liouville") {
        auto comma = body.find(',');
        long m = 0, depth = 0;
        try {
            if (comma == std::string::npos) {
                m = std::stol(body);
                depth = 16;  // materialization stops at the bit budget anyway
            } else {
                m = std::stol(body.substr(0, comma));
                depth = std::stol(body.substr(comma + 1));
            }
        } catch (const std::exception&) {
            throw DomainError("unparseable liouville descriptor: " + body);
        }
        return RotationNumber::liouville(materialize_liouville(m, depth));
    }
    if (form == "ball") return parse_ball(body);
    throw DomainError("unknown angle form: " + form);
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

namespace {

LogMagnitude log2_of_rational_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    LogMagnitude l = LogMagnitude::of_rational(lo, prec);
    LogMagnitude h = LogMagnitude::of_rational(hi, prec);
    return LogMagnitude::of_log2_bounds(l.lo(), h.hi());
}

}  // namespace

DistanceEnclosure distance_of_rational_interval(const Rational& lo, const Rational& hi,
                                                mpfr_prec_t prec) {
    if (lo > hi || hi - lo > Rational(1, 2)) {
        throw DomainError("distance interval must satisfy lo <= hi, width <= 1/2");
    }
    Rational dlo = nearest_int_distance(lo);
    Rational dhi = nearest_int_distance(hi);
    // d(t) = ||t|| is piecewise linear with minima 0 at integers and maxima
    // 1/2 at half-integers; enumerate the at most two breakpoints w/2 with
    // w integer in [2*lo, 2*hi].
    bool integer_inside = false, half_inside = false;
    Rational two_lo = 2 * lo, two_hi = 2 * hi;
    BigInt w, w_max;
    mpz_cdiv_q(w.get_mpz_t(), two_lo.get_num().get_mpz_t(), two_lo.get_den().get_mpz_t());
    mpz_fdiv_q(w_max.get_mpz_t(), two_hi.get_num().get_mpz_t(), two_hi.get_den().get_mpz_t());
    for (; w <= w_max; ++w) {
        if (mpz_even_p(w.get_mpz_t())) {
            integer_inside = true;
        } else {
            half_inside = true;
        }
    }
    DistanceEnclosure out;
    out.rlo = integer_inside ? Rational(0) : std::min(dlo, dhi);
    out.rhi = half_inside ? Rational(1, 2) : std::max(dlo, dhi);
    if (sgn(out.rlo) > 0) out.log2 = log2_of_rational_bounds(out.rlo, out.rhi, prec);
    return out;
}

namespace {

DistanceEnclosure distance_rational_exact(const Rational& v, mpfr_prec_t prec) {
    Rational dist = nearest_int_distance(v);
    DistanceEnclosure out;
    out.rlo = dist;
    out.rhi = dist;
    if (sgn(dist) == 0) {
        out.exact_zero = true;
    } else {
        out.log2 = log2_of_rational_bounds(dist, dist, prec);
    }
    return out;
}

DistanceEnclosure distance_surd(const QuadraticSurd& x, const BigInt& n, const Rational& y,
                                const PrecisionPolicy& policy) {
    QuadraticSurd t = x.scale_sub(n, y);
    BigInt k = t.floor();
    QuadraticSurd f = (sgn(k) != 0) ? t.sub_int(k) : t;  // f in [0, 1), irrational
    QuadraticSurd dist = (f.cmp_rational(Rational(1, 2)) <= 0) ? f : f.neg_plus_int(1);
    for (int round = 0;; ++round) {
        mpfr_prec_t prec = policy.bits_at(round);
        Interval e = dist.enclosure(prec);
        if (e.is_positive() &&
            (e.width_log2() <= policy.target_width_log2 || round >= policy.max_refinements)) {
            DistanceEnclosure out;
            out.rlo = std::max(Rational(0), e.lo_rational());
            out.rhi = std::min(Rational(1, 2), e.hi_rational());
            out.log2 = LogMagnitude::of_interval(e, prec);
            return out;
        }
        if (round >= policy.max_refinements) {
            throw PrecisionError("cannot certify surd distance at max precision");
        }
    }
}

DistanceEnclosure distance_liouville(const LiouvilleLevels& lv, const BigInt& n, const Rational& y,
                                     mpfr_prec_t prec) {
    long J = lv.depth();
    Rational base = Rational(n) * lv.partial[J - 1] - y;
    base.canonicalize();
    Rational w = Rational(n) * lv.tail_upper(J);
    w.canonicalize();
    if (w > Rational(1, 4)) {
        throw PrecisionError("liouville materialization too shallow for this multiple");
    }
    Rational base_red = frac_part(base);
    if (sgn(base_red) == 0) {
        // n*S_J is congruent to y: the distance is exactly n*tail, which has
        // certified log2 bounds even when the tail is not representable.
        DistanceEnclosure out;
        out.rlo = 0;
        out.rhi = std::min(w, Rational(1, 2));
        LogMagnitude nlog = LogMagnitude::of_rational(Rational(n), prec);
        out.log2 = lv.tail_log2(J, prec).mul(nlog);
        return out;
    }
    return distance_of_rational_interval(base_red, base_red + w, prec);
}

DistanceEnclosure distance_ball(const DecimalBall& b, const BigInt& n, const Rational& y,
                                mpfr_prec_t /*prec*/) {
    // Everything is exact from here: mpfr endpoints are rationals.
    Rational c = b.center.to_rational();
    Rational r = b.radius.to_rational();
    Rational lo = Rational(n) * (c - r) - y;
    Rational hi = Rational(n) * (c + r) - y;
    lo.canonicalize();
    hi.canonicalize();
    if (hi - lo > Rational(1, 2)) {
        throw PrecisionError("ball radius too large to resolve multiple " + n.get_str());
    }
    Rational lo_red = frac_part(lo);
    return distance_of_rational_interval(lo_red, lo_red + (hi - lo), 128);
}

}  // namespace

DistanceEnclosure multiple_distance(const RotationNumber& x, const BigInt& n, const Rational& y,
                                    const PrecisionPolicy& policy) {
    if (sgn(n) <= 0) throw DomainError("multiple index must be positive");
    switch (x.kind()) {
        case RotationNumber::Kind::Rational: {
            Rational v = Rational(n) * x.rational_value() - y;
            v.canonicalize();
            return distance_rational_exact(v, policy.initial_bits);
        }
        case RotationNumber::Kind::Surd:
            return distance_surd(x.surd_value(), n, y, policy);
        case RotationNumber::Kind::Liouville:
            return distance_liouville(x.liouville_levels(), n, y, policy.initial_bits);
        case RotationNumber::Kind::Ball:
        default:
            return distance_ball(x.ball_value(), n, y, policy.initial_bits);
    }
}

}  // namespace rotospec

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
#include "rotospec/arith.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace rotospec {

Real Real::of_long(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.get(), x, MPFR_RNDN);
    return r;
}

Real Real::of_rational(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.get(), x.get_mpq_t(), rnd);
    return r;
}

Real Real::of_bigint(const BigInt& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.get(), x.get_mpz_t(), rnd);
    return r;
}

Rational Real::to_rational() const {
    if (is_nan() || is_inf()) throw DomainError("cannot convert non-finite Real to Rational");
    if (is_zero()) return Rational(0);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Real::hex() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%Ra", v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real Real::from_hex(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.get(), s.c_str(), 0, MPFR_RNDN) != 0) {
        throw DomainError("unparseable hex real: " + s);
    }
    return r;
}

std::string Real::str(size_t digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_) < 0) {
        throw std::runtime_error("mpfr_asprintf failed");
    }
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

// ---------------------------------------------------------------------------
// Interval
// ---------------------------------------------------------------------------

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.is_nan() || hi_.is_nan() || mpfr_cmp(lo_.get(), hi_.get()) > 0) {
        throw DomainError("invalid interval endpoints");
    }
}

Interval Interval::point_rational(const Rational& x, mpfr_prec_t prec) {
    return Interval(Real::of_rational(x, prec, MPFR_RNDD), Real::of_rational(x, prec, MPFR_RNDU));
}

Interval Interval::of_rational_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
    return Interval(Real::of_rational(lo, prec, MPFR_RNDD), Real::of_rational(hi, prec, MPFR_RNDU));
}

Interval Interval::of_long(long x, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.get(), x, MPFR_RNDD);
    mpfr_set_si(hi.get(), x, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::pi(mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::two_pi(mpfr_prec_t prec) {
    Interval p = pi(prec);
    Real lo(prec), hi(prec);
    mpfr_mul_ui(lo.get(), p.lo().get(), 2, MPFR_RNDD);
    mpfr_mul_ui(hi.get(), p.hi().get(), 2, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sqrt_bigint(const BigInt& d, mpfr_prec_t prec) {
    if (sgn(d) < 0) throw DomainError("sqrt of negative integer");
    Real dlo = Real::of_bigint(d, prec + 4, MPFR_RNDD);
    Real dhi = Real::of_bigint(d, prec + 4, MPFR_RNDU);
    Real lo(prec), hi(prec);
    mpfr_sqrt(lo.get(), dlo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), dhi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real lo(p), hi(p);
    mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::add(const Interval& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real lo(p), hi(p);
    mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sub(const Interval& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real lo(p), hi(p);
    mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::mul(const Interval& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec());
    // Try all endpoint products with both roundings; min/max is the hull.
    Real lo(p), hi(p), t(p);
    bool first = true;
    mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::div(const Interval& o) const {
    if (o.contains_zero()) throw DomainError("interval division by an interval containing 0");
    mpfr_prec_t p = std::max(prec(), o.prec());
    Real lo(p), hi(p), t(p);
    bool first = true;
    mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::neg() const {
    Real lo(prec()), hi(prec());
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::abs_value() const {
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return neg();
    Real lo(prec()), hi(prec()), t(prec());
    mpfr_set_zero(lo.get(), 1);
    mpfr_neg(t.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(hi.get(), t.get(), hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sqrt() const {
    if (lo_.sign() < 0) throw DomainError("sqrt of interval with negative lower bound");
    Real lo(prec()), hi(prec());
    mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::square() const {
    Interval a = abs_value();
    Real lo(prec()), hi(prec());
    mpfr_sqr(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), a.hi().get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::mul_bigint(const BigInt& k) const {
    Real lo(prec()), hi(prec());
    if (sgn(k) >= 0) {
        mpfr_mul_z(lo.get(), lo_.get(), k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), hi_.get(), k.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(lo.get(), hi_.get(), k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), lo_.get(), k.get_mpz_t(), MPFR_RNDU);
    }
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::add_rational(const Rational& r) const {
    Real lo(prec()), hi(prec());
    mpfr_add_q(lo.get(), lo_.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(hi.get(), hi_.get(), r.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::sub_rational(const Rational& r) const {
    Real lo(prec()), hi(prec());
    mpfr_sub_q(lo.get(), lo_.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_sub_q(hi.get(), hi_.get(), r.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

bool Interval::contains(const Rational& x) const {
    return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

bool Interval::contains_double(double x) const {
    return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
}

std::optional<bool> Interval::less_than(const Interval& o) const {
    if (mpfr_cmp(hi_.get(), o.lo_.get()) < 0) return true;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) >= 0) return false;
    return std::nullopt;
}

std::optional<bool> Interval::leq_rational(const Rational& r) const {
    if (mpfr_cmp_q(hi_.get(), r.get_mpq_t()) <= 0) return true;
    if (mpfr_cmp_q(lo_.get(), r.get_mpq_t()) > 0) return false;
    return std::nullopt;
}

std::optional<bool> Interval::geq_rational(const Rational& r) const {
    if (mpfr_cmp_q(lo_.get(), r.get_mpq_t()) >= 0) return true;
    if (mpfr_cmp_q(hi_.get(), r.get_mpq_t()) < 0) return false;
    return std::nullopt;
}

double Interval::width_log2() const {
    Real w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    if (w.is_zero()) return -1e300;
    mpfr_log2(w.get(), w.get(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

std::string Interval::str() const {
    return "[" + lo_.str() + ", " + hi_.str() + "]";
}

// ---------------------------------------------------------------------------
// Trigonometric enclosures
// ---------------------------------------------------------------------------

Interval interval_sin_pi(const Interval& t) {
    Rational half(1, 2);
    if (t.lo().sign() < 0 || mpfr_cmp_q(t.hi().get(), half.get_mpq_t()) > 0) {
        throw DomainError("interval_sin_pi requires t in [0, 1/2]");
    }
    mpfr_prec_t p = t.prec();
    Interval pi = Interval::pi(p);

    // Exact endpoints at t = 0 and t = 1/2 keep rational-angle divisors exact.
    bool lo_is_zero = t.lo().is_zero();
    bool hi_is_half = mpfr_cmp_q(t.hi().get(), half.get_mpq_t()) == 0;

    Real lo(p), hi(p), arg(p);
    if (lo_is_zero) {
        mpfr_set_zero(lo.get(), 1);
    } else {
        mpfr_mul(arg.get(), pi.lo().get(), t.lo().get(), MPFR_RNDD);
        mpfr_sin(lo.get(), arg.get(), MPFR_RNDD);
        if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
    }
    if (hi_is_half) {
        mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    } else {
        mpfr_mul(arg.get(), pi.hi().get(), t.hi().get(), MPFR_RNDU);
        // Rounding slack can push arg past pi/2, where sin turns around;
        // saturate the bound at 1 in that case.
        Real half_pi_lo(p);
        mpfr_div_ui(half_pi_lo.get(), pi.lo().get(), 2, MPFR_RNDD);
        if (mpfr_cmp(arg.get(), half_pi_lo.get()) >= 0) {
            mpfr_set_si(hi.get(), 1, MPFR_RNDU);
        } else {
            mpfr_sin(hi.get(), arg.get(), MPFR_RNDU);
            if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
        }
    }
    if (mpfr_cmp(lo.get(), hi.get()) > 0) mpfr_set(lo.get(), hi.get(), MPFR_RNDD);
    return Interval(std::move(lo), std::move(hi));
}

namespace {

// Enclosure of f(2*pi*t) from f at the left endpoint plus the interval
// width, valid since |f'| <= 1 for sin/cos.
Interval lipschitz_trig_2pi(const Interval& t, bool use_cos) {
    mpfr_prec_t p = t.prec();
    mpfr_prec_t pw = p + 8;
    Interval arg = t.mul(Interval::two_pi(pw));

    Real val(pw), err(pw), ulp(pw);
    if (use_cos) {
        mpfr_cos(val.get(), arg.lo().get(), MPFR_RNDN);
    } else {
        mpfr_sin(val.get(), arg.lo().get(), MPFR_RNDN);
    }
    mpfr_sub(err.get(), arg.hi().get(), arg.lo().get(), MPFR_RNDU);
    // |val| <= 1, so one rounding step is below 2^(2-pw).
    mpfr_set_si_2exp(ulp.get(), 1, 2 - static_cast<long>(pw), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), ulp.get(), MPFR_RNDU);

    Real lo(p), hi(p);
    mpfr_sub(lo.get(), val.get(), err.get(), MPFR_RNDD);
    mpfr_add(hi.get(), val.get(), err.get(), MPFR_RNDU);
    if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

}  // namespace

Interval interval_cos_2pi(const Interval& t) { return lipschitz_trig_2pi(t, true); }
Interval interval_sin_2pi(const Interval& t) { return lipschitz_trig_2pi(t, false); }

// ---------------------------------------------------------------------------
// LogMagnitude
// ---------------------------------------------------------------------------

LogMagnitude LogMagnitude::zero() { return LogMagnitude(); }

LogMagnitude LogMagnitude::of_rational(const Rational& x, mpfr_prec_t prec) {
    int s = sgn(x);
    if (s < 0) throw DomainError("LogMagnitude of negative rational");
    if (s == 0) return zero();
    Real lo(prec), hi(prec), t(prec + 8);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_log2(lo.get(), t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_log2(hi.get(), t.get(), MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::of_interval(const Interval& x, mpfr_prec_t prec) {
    if (x.lo().is_zero() && x.hi().is_zero()) return zero();
    if (x.lo().sign() <= 0) throw DomainError("LogMagnitude requires a positive interval");
    Real lo(prec), hi(prec);
    mpfr_log2(lo.get(), x.lo().get(), MPFR_RNDD);
    mpfr_log2(hi.get(), x.hi().get(), MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::of_log2_bounds(Real lo, Real hi) {
    if (mpfr_cmp(lo.get(), hi.get()) > 0) throw DomainError("invalid log2 bounds");
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::of_exact_power_of_two(long e, mpfr_prec_t prec) {
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.get(), e, MPFR_RNDD);
    mpfr_set_si(hi.get(), e, MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::mul(const LogMagnitude& o) const {
    if (zero_ || o.zero_) return zero();
    mpfr_prec_t p = std::max(lo_.prec(), o.lo_.prec());
    Real lo(p), hi(p);
    mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::div(const LogMagnitude& o) const {
    if (o.zero_) throw DomainError("LogMagnitude division by zero");
    if (zero_) return zero();
    mpfr_prec_t p = std::max(lo_.prec(), o.lo_.prec());
    Real lo(p), hi(p);
    mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::pow(const BigInt& e) const {
    if (zero_) {
        if (sgn(e) <= 0) throw DomainError("0^e undefined for e <= 0 in log space");
        return zero();
    }
    mpfr_prec_t p = lo_.prec();
    Real lo(p), hi(p);
    if (sgn(e) >= 0) {
        mpfr_mul_z(lo.get(), lo_.get(), e.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), hi_.get(), e.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(lo.get(), hi_.get(), e.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), lo_.get(), e.get_mpz_t(), MPFR_RNDU);
    }
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::pow_rational(const Rational& e) const {
    if (zero_) {
        if (sgn(e) <= 0) throw DomainError("0^e undefined for e <= 0 in log space");
        return zero();
    }
    mpfr_prec_t p = lo_.prec();
    Real lo(p), hi(p);
    if (sgn(e) >= 0) {
        mpfr_mul_q(lo.get(), lo_.get(), e.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(hi.get(), hi_.get(), e.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(lo.get(), hi_.get(), e.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(hi.get(), lo_.get(), e.get_mpq_t(), MPFR_RNDU);
    }
    return LogMagnitude(std::move(lo), std::move(hi));
}

LogMagnitude LogMagnitude::reciprocal() const {
    if (zero_) throw DomainError("reciprocal of zero");
    mpfr_prec_t p = lo_.prec();
    Real lo(p), hi(p);
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return LogMagnitude(std::move(lo), std::move(hi));
}

std::optional<bool> LogMagnitude::leq(const LogMagnitude& o) const {
    if (zero_) return true;  // 0 <= anything nonnegative
    if (o.zero_) return false;
    if (mpfr_cmp(hi_.get(), o.lo_.get()) <= 0) return true;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) > 0) return false;
    return std::nullopt;
}

std::optional<bool> LogMagnitude::less(const LogMagnitude& o) const {
    if (o.zero_) return false;
    if (zero_) return true;
    if (mpfr_cmp(hi_.get(), o.lo_.get()) < 0) return true;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) >= 0) return false;
    return std::nullopt;
}

std::optional<bool> LogMagnitude::geq_log2(long e) const {
    if (zero_) return false;
    if (lo_.cmp_long(e) >= 0) return true;
    if (hi_.cmp_long(e) < 0) return false;
    return std::nullopt;
}

std::optional<Interval> LogMagnitude::to_interval(mpfr_prec_t prec) const {
    if (zero_) return Interval::of_long(0, prec);
    Real lo(prec), hi(prec);
    mpfr_exp2(lo.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp2(hi.get(), hi_.get(), MPFR_RNDU);
    if (lo.is_inf() || hi.is_inf() || lo.is_nan() || hi.is_nan()) return std::nullopt;
    return Interval(std::move(lo), std::move(hi));
}

std::string LogMagnitude::str() const {
    if (zero_) return "0";
    return "2^[" + lo_.str(8) + ", " + hi_.str(8) + "]";
}

LogMagnitude log2_of_product(const std::vector<LogFactor>& factors, mpfr_prec_t prec) {
    Real acc_lo(prec), acc_hi(prec);
    mpfr_set_zero(acc_lo.get(), 1);
    mpfr_set_zero(acc_hi.get(), 1);
    for (const auto& f : factors) {
        LogMagnitude base = std::holds_alternative<Rational>(f.base)
                                ? LogMagnitude::of_rational(std::get<Rational>(f.base), prec)
                                : LogMagnitude::of_interval(std::get<Interval>(f.base), prec);
        if (base.is_zero()) throw DomainError("log2_of_product requires positive bases");
        LogMagnitude term = base.pow(f.exponent);
        mpfr_add(acc_lo.get(), acc_lo.get(), term.lo().get(), MPFR_RNDD);
        mpfr_add(acc_hi.get(), acc_hi.get(), term.hi().get(), MPFR_RNDU);
    }
    return LogMagnitude::of_log2_bounds(std::move(acc_lo), std::move(acc_hi));
}

Rational frac_part(const Rational& x) {
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rational r = x - Rational(fl);
    r.canonicalize();
    return r;
}

Rational nearest_int_distance(const Rational& x) {
    Rational f = frac_part(x);
    Rational other = 1 - f;
    return f < other ? f : other;
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw DomainError("unparseable rational: " + s);
        if (sgn(q.get_den()) <= 0) {
            // mpq_set_str keeps the sign on the numerator only for canonical
            // input; normalize "p/-q" by hand.
            q = Rational(-q.get_num(), -q.get_den());
        }
        q.canonicalize();
        return q;
    }
    // decimal literal
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
        neg = head[0] == '-';
        head = head.substr(1);
    }
    if (frac.find_first_not_of("0123456789") != std::string::npos ||
        head.find_first_not_of("0123456789") != std::string::npos) {
        throw DomainError("unparseable decimal: " + s);
    }
    BigInt ipart = head.empty() ? BigInt(0) : BigInt(head);
    BigInt fpart = frac.empty() ? BigInt(0) : BigInt(frac);
    BigInt den(1);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q = Rational(ipart) + Rational(fpart, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

}  // namespace rotospec

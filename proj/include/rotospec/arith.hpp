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
#ifndef ROTOSPEC_ARITH_HPP
#define ROTOSPEC_ARITH_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rotospec {

using BigInt = mpz_class;
using Rational = mpq_class;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExpansionExhausted : DomainError {
    using DomainError::DomainError;
};
struct EigenCollision : std::runtime_error {
    long index;
    explicit EigenCollision(long n)
        : std::runtime_error("eigenvalue collision at n=" + std::to_string(n)), index(n) {}
};

// Working precision starts at initial_bits and doubles per refinement round
// until an enclosure is tight enough or the cap is hit.
struct PrecisionPolicy {
    mpfr_prec_t initial_bits = 128;
    int max_refinements = 8;
    long target_width_log2 = -32;

    mpfr_prec_t bits_at(int round) const {
        int r = std::min(round, max_refinements);
        return initial_bits << r;
    }
};

// RAII value wrapper around mpfr_t. Rounding is chosen at each use site;
// nothing here rounds implicitly.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real of_long(long x, mpfr_prec_t prec);
    static Real of_rational(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Real of_bigint(const BigInt& x, mpfr_prec_t prec, mpfr_rnd_t rnd);

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_long(long o) const { return mpfr_cmp_si(v_, o); }

    // Exact conversion; v must be finite.
    Rational to_rational() const;

    // Hex-float form, round-trips exactly through from_hex.
    std::string hex() const;
    static Real from_hex(const std::string& s, mpfr_prec_t prec);

    std::string str(size_t digits = 20) const;

  private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with MPFR endpoints; every operation rounds
// outward, so the result always encloses the true value.
class Interval {
  public:
    Interval(Real lo, Real hi);

    static Interval point_rational(const Rational& x, mpfr_prec_t prec);
    static Interval of_rational_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
    static Interval of_long(long x, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);
    static Interval two_pi(mpfr_prec_t prec);
    static Interval sqrt_bigint(const BigInt& d, mpfr_prec_t prec);  // d >= 0
    static Interval hull(const Interval& a, const Interval& b);

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }
    Rational lo_rational() const { return lo_.to_rational(); }
    Rational hi_rational() const { return hi_.to_rational(); }

    Interval add(const Interval& o) const;
    Interval sub(const Interval& o) const;
    Interval mul(const Interval& o) const;
    Interval div(const Interval& o) const;  // o must exclude 0
    Interval neg() const;
    Interval abs_value() const;
    Interval sqrt() const;  // lo >= 0 required
    Interval square() const;
    Interval mul_bigint(const BigInt& k) const;
    Interval add_rational(const Rational& r) const;
    Interval sub_rational(const Rational& r) const;
    Interval reciprocal() const { return Interval::of_long(1, prec()).div(*this); }

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool is_positive() const { return lo_.sign() > 0; }
    bool contains(const Rational& x) const;
    bool contains_double(double x) const;
    // Certified order: true/false when provable, nullopt when overlapping.
    std::optional<bool> less_than(const Interval& o) const;
    std::optional<bool> leq_rational(const Rational& r) const;
    std::optional<bool> geq_rational(const Rational& r) const;

    double width_log2() const;
    double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }
    std::string str() const;

  private:
    Real lo_, hi_;
};

// sin(pi*t) for t in [0, 1/2]; monotone there, endpoints rounded outward.
// Exact at t = 0 and t = 1/2.
Interval interval_sin_pi(const Interval& t);

// Enclosures of cos(2*pi*t), sin(2*pi*t) for arbitrary t (Lipschitz bound
// around the midpoint; adequate away from the small-divisor regime).
Interval interval_cos_2pi(const Interval& t);
Interval interval_sin_2pi(const Interval& t);

// log2-domain enclosure of a nonnegative quantity; represents exactly 0
// iff zero_flag. Built for magnitudes like 2^-2048 that no float holds.
class LogMagnitude {
  public:
    LogMagnitude() : lo_(MPFR_PREC_MIN), hi_(MPFR_PREC_MIN), zero_(true) {}

    static LogMagnitude zero();
    static LogMagnitude of_rational(const Rational& x, mpfr_prec_t prec);  // x >= 0
    static LogMagnitude of_interval(const Interval& x, mpfr_prec_t prec);  // x.lo > 0
    static LogMagnitude of_log2_bounds(Real lo, Real hi);
    static LogMagnitude of_exact_power_of_two(long e, mpfr_prec_t prec);

    bool is_zero() const { return zero_; }
    const Real& lo() const { return lo_; }  // lower bound on log2(value)
    const Real& hi() const { return hi_; }
    double lo_d() const { return lo_.to_double(MPFR_RNDD); }
    double hi_d() const { return hi_.to_double(MPFR_RNDU); }

    LogMagnitude mul(const LogMagnitude& o) const;
    LogMagnitude div(const LogMagnitude& o) const;  // o nonzero
    LogMagnitude pow(const BigInt& e) const;
    LogMagnitude pow_rational(const Rational& e) const;
    LogMagnitude reciprocal() const;

    // Certified comparisons of the represented values.
    std::optional<bool> leq(const LogMagnitude& o) const;
    std::optional<bool> less(const LogMagnitude& o) const;
    std::optional<bool> geq_log2(long e) const;  // value >= 2^e ?

    std::optional<Interval> to_interval(mpfr_prec_t prec) const;
    std::string str() const;

  private:
    LogMagnitude(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)), zero_(false) {}
    Real lo_, hi_;
    bool zero_;
};

// One factor base^exponent of a product evaluated in log2 space.
struct LogFactor {
    std::variant<Rational, Interval> base;  // must be positive
    BigInt exponent;
};

// Enclosure of sum_i exponent_i * log2(base_i). Exponents are big integers
// because q_{j+1} = q_j^{q_j} towers out of machine range immediately.
LogMagnitude log2_of_product(const std::vector<LogFactor>& factors, mpfr_prec_t prec);

// min over integers m of |x - m|; always in [0, 1/2].
Rational nearest_int_distance(const Rational& x);

// x reduced into [0, 1).
Rational frac_part(const Rational& x);

// Accepts "p/q", plain integers, and decimal literals ("0.35" -> 7/20).
Rational parse_rational(const std::string& s);

}  // namespace rotospec

#endif  // ROTOSPEC_ARITH_HPP

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
#ifndef ROTOSPEC_ROTATION_NUMBER_HPP
#define ROTOSPEC_ROTATION_NUMBER_HPP

#include <memory>
#include <string>
#include <variant>

#include "rotospec/arith.hpp"

namespace rotospec {

// (a + b*sqrt(d)) / c with exact integer coefficients, d > 0 non-square,
// b != 0, c > 0 after normalization. Irrational by construction.
struct QuadraticSurd {
    BigInt a, b, c, d;

    void normalize();                       // sign of c, gcd(a, b, c)
    BigInt floor() const;                   // exact
    QuadraticSurd scale_sub(const BigInt& n, const Rational& y) const;  // n*this - y
    QuadraticSurd sub_int(const BigInt& k) const;
    QuadraticSurd neg_plus_int(const BigInt& k) const;                  // k - this
    int cmp_rational(const Rational& r) const;                          // exact sign of this - r
    Interval enclosure(mpfr_prec_t prec) const;
    std::string str() const;
};

bool is_perfect_square(const BigInt& d);

// Materialized prefix of x(m) = sum 1/q_j with q_1 = m, q_{j+1} = q_j^q_j.
// q values are kept exactly while they fit the bit budget; the first value
// past the budget is tracked only through log2(q) bounds.
struct LiouvilleLevels {
    long m = 2;
    long requested_depth = 0;
    std::vector<BigInt> q;            // exact q_1 .. q_J
    std::vector<Rational> partial;    // S_1 .. S_J, S_j = sum_{i<=j} 1/q_i
    LogMagnitude log_q_next;          // bounds on log2(q_{J+1})
    bool truncated = false;           // requested depth exceeded the budget

    long depth() const { return static_cast<long>(q.size()); }

    // log2 bounds on q_{j+1} for 1 <= j <= depth (derived from exact q_j).
    LogMagnitude log_q_after(long j, mpfr_prec_t prec) const;

    // Exact rational upper bound on the tail sum_{i>j} 1/q_i, chosen small
    // enough to be representable even when q_{j+1} is not.
    Rational tail_upper(long j) const;
    // log2 bounds on the tail: tail in [1/q_{j+1}, 2/q_{j+1}].
    LogMagnitude tail_log2(long j, mpfr_prec_t prec) const;
};

struct LiouvilleSymbolic {
    std::shared_ptr<const LiouvilleLevels> levels;
};

struct DecimalBall {
    Real center;
    Real radius;  // > 0
};

struct RationalAngle {
    Rational value;  // in [0, 1)
};

// Builds the materialized levels for x(m) up to `depth`, stopping early when
// exact q_j would exceed max_bits.
std::shared_ptr<const LiouvilleLevels> materialize_liouville(long m, long depth,
                                                             long max_bits = 1 << 16);

// The angle x in turns defining the rotation r = e^{2*pi*i*x}; always
// reduced into [0, 1). Immutable.
class RotationNumber {
  public:
    enum class Kind { Rational, Surd, Liouville, Ball };

    static RotationNumber rational(Rational x);
    static RotationNumber surd(BigInt a, BigInt b, BigInt c, BigInt d);
    static RotationNumber liouville(std::shared_ptr<const LiouvilleLevels> levels);
    static RotationNumber ball(Real center, Real radius);

    Kind kind() const;
    bool is_rational() const { return kind() == Kind::Rational; }
    const Rational& rational_value() const;
    const QuadraticSurd& surd_value() const;
    const LiouvilleLevels& liouville_levels() const;
    const DecimalBall& ball_value() const;

    // Certified enclosure of the angle at the given precision.
    Interval enclosure(mpfr_prec_t prec) const;

    // Canonical descriptor, also the parse format:
    //   rational:p/q | surd:(a+b*sqrt(d))/c | liouville:m,J | ball:c+-r
    std::string descriptor() const;
    static RotationNumber parse(const std::string& descriptor);

  private:
    explicit RotationNumber(std::variant<RationalAngle, QuadraticSurd, LiouvilleSymbolic, DecimalBall> v)
        : v_(std::move(v)) {}
    std::variant<RationalAngle, QuadraticSurd, LiouvilleSymbolic, DecimalBall> v_;
};

// Certified enclosure of a distance-type value in [0, 1/2] that can be far
// below floating range. Exact rational bounds are kept whenever they are
// representable; a log2 enclosure certifies positivity at any scale.
struct DistanceEnclosure {
    bool exact_zero = false;
    Rational rlo, rhi;                  // 0 <= rlo <= value <= rhi <= 1/2
    std::optional<LogMagnitude> log2;   // set when value > 0 is certified

    bool positive_certified() const { return !exact_zero && log2.has_value(); }
};

// ||n*x - y|| where y is a rational angle: distance from n*x - y to the
// nearest integer. Exact for rational x; certified for surd and Liouville
// representations; best-effort for balls (log2 unset when the ball cannot
// be separated from an integer).
DistanceEnclosure multiple_distance(const RotationNumber& x, const BigInt& n, const Rational& y,
                                    const PrecisionPolicy& policy = {});

// Distance helper on an exact rational interval of width <= 1/2.
DistanceEnclosure distance_of_rational_interval(const Rational& lo, const Rational& hi,
                                                mpfr_prec_t prec);

}  // namespace rotospec

#endif  // ROTOSPEC_ROTATION_NUMBER_HPP

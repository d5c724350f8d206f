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
#ifndef ROTOSPEC_ROTATION_HPP
#define ROTOSPEC_ROTATION_HPP

#include <complex>
#include <vector>

#include "rotospec/arith.hpp"
#include "rotospec/rotation_number.hpp"

namespace rotospec {

// Certified enclosure of |r^n - lambda|. The log2 enclosure carries
// divisors like |r^256 - 1| for x(2), near 2^-2037 and far below floating
// range; it is absent only when positivity itself cannot be certified
// (wide decimal balls). Values below 2^-64 drop the Interval form.
struct DivisorEnclosure {
    bool exact_zero = false;
    std::optional<LogMagnitude> log2;
    std::optional<Interval> interval;

    bool positive_certified() const { return !exact_zero && log2.has_value() && !log2->is_zero(); }
};

// |r^n - lambda| = 2*sin(pi*||n*x - y||) for lambda = e^{2*pi*i*y}.
// Exactly 0 iff n*x == y (mod 1) provably (rational case).
DivisorEnclosure small_divisor(const RotationNumber& x, const BigInt& n, const Rational& y,
                               const PrecisionPolicy& policy = {});

// Divisor enclosure straight from a distance enclosure.
DivisorEnclosure divisor_from_distance(const DistanceEnclosure& d, mpfr_prec_t prec);

struct DivisorSample {
    long n = 0;
    DivisorEnclosure divisor;
};

// Bulk scan n = 1..N; exact rational fast path evaluates one period only.
std::vector<DivisorSample> small_divisor_sequence(const RotationNumber& x, const Rational& y,
                                                  long N, const PrecisionPolicy& policy = {},
                                                  bool parallel = true);

struct GapValue {
    Interval value;
    std::size_t multiplicity;
    GapValue(Interval v, std::size_t m) : value(std::move(v)), multiplicity(m) {}
};

struct GapReport {
    long requested_n = 0;
    std::size_t points = 0;  // distinct orbit points actually used
    std::vector<GapValue> distinct;  // at most 3 by the three-distance theorem
    Interval max_gap;

    GapReport() : max_gap(Interval::of_long(0, 64)) {}
};

// Circle gaps of {frac(n*x) : 1 <= n <= N}. Rational angles reduce to one
// exact period; irrational angles are sorted at certified precision.
GapReport orbit_gaps(const RotationNumber& x, long N, const PrecisionPolicy& policy = {},
                     bool parallel = true);

// psi_a(z) = (a - z)/(1 - conj(a) z); involution of the disc with
// psi_a(a) = 0. Plain double-precision utility.
std::complex<double> moebius(std::complex<double> a, std::complex<double> z);

}  // namespace rotospec

#endif  // ROTOSPEC_ROTATION_HPP

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
#ifndef ROTOSPEC_CONTFRAC_HPP
#define ROTOSPEC_CONTFRAC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "rotospec/arith.hpp"
#include "rotospec/rotation_number.hpp"

namespace rotospec {

// Partial quotients [a0; a1, a2, ...] with a0 = 0 for angles in [0, 1).
// Finite expansions are canonical: the last quotient is >= 2 unless the
// expansion is [a0] alone.
struct ContinuedFraction {
    std::vector<BigInt> a;
    bool finite = false;

    std::size_t size() const { return a.size(); }
};

struct Convergent {
    BigInt p;
    BigInt q;  // > 0
    std::size_t index = 0;

    Rational value() const { return Rational(p) / Rational(q); }
};

// Euclidean expansion of a rational in [0, 1); exact round trip.
ContinuedFraction cf_expand(const Rational& x);

// Reconstructs the exact value of a finite expansion.
Rational cf_value(const ContinuedFraction& cf);

// First k partial quotients of an irrational (or rational) representation.
// Surds use the exact periodic (P + sqrt(D))/Q recurrence; Liouville and
// ball representations refine a rational enclosure and stop with a
// precision error rather than guess a quotient the enclosure straddles.
ContinuedFraction cf_stream(const RotationNumber& x, std::size_t k,
                            const PrecisionPolicy& policy = {});

// Convergents p_j/q_j for the first min(k, cf.size()) quotients.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k);

// All convergents with q <= horizon plus the first one past it (needed to
// certify best-approximation coverage of the whole range). Adaptively
// extends the expansion; throws when the representation cannot reach it.
std::vector<Convergent> convergents_up_to(const RotationNumber& x, const BigInt& horizon,
                                          const PrecisionPolicy& policy = {});

// Certified lower bounds on ||n*x||: for q_k <= n < q_{k+1},
// ||n*x|| >= ||q_k*x|| >= 1/(q_k + q_{k+1}).
struct BestApproxRange {
    BigInt n_lo, n_hi;     // inclusive range of n
    Rational bound;        // 1/(q_k + q_{k+1})
    LogMagnitude bound_log2;
    Convergent witness;    // the convergent whose denominator anchors the range
};

// For rational x = p/q the multiples are periodic: ||n*x|| takes values in
// {0, 1/q, ..., floor(q/2)/q}.
struct RationalPeriodReport {
    BigInt q;
    Rational min_nonzero;
};

struct BestApproxBounds {
    std::vector<BestApproxRange> ranges;
    std::optional<RationalPeriodReport> rational_period;
};

BestApproxBounds best_approx_lower_bound(const RotationNumber& x, const BigInt& horizon,
                                         const PrecisionPolicy& policy = {});

enum class GrowthTrend { Bounded, Increasing };

// max_k log q_{k+1} / log q_k over the available best-approximation
// denominators; the ratio estimates delta in |x - p/q| >= c/q^(1+delta).
struct ExponentEstimate {
    double estimate = 0.0;
    GrowthTrend trend = GrowthTrend::Bounded;
    std::vector<double> ratios;
};

ExponentEstimate irrationality_exponent_estimate(const RotationNumber& x, std::size_t K,
                                                 const PrecisionPolicy& policy = {});

}  // namespace rotospec

#endif  // ROTOSPEC_CONTFRAC_HPP

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
#ifndef ROTOSPEC_CERTIFICATES_HPP
#define ROTOSPEC_CERTIFICATES_HPP

#include <optional>
#include <vector>

#include "rotospec/contfrac.hpp"
#include "rotospec/rotation_number.hpp"

namespace rotospec {

enum class AsymptoticJustification { PeriodicCF, BoundedQuotients, AssertedByUser };

// Claim: |x - p/q| >= c / q^(1+delta) for all rationals p/q. Machine-checked
// on convergents up to verified_up_to_q; beyond that horizon the claim
// stands on the recorded justification only.
struct DiophantineCertificate {
    Rational c;            // > 0
    Rational delta;        // >= 1
    BigInt verified_up_to_q = 0;
    AsymptoticJustification justification = AsymptoticJustification::AssertedByUser;
};

// Claim: |x - p_j/q_j| <= alpha^{q_j} for every listed approximant.
struct LiouvilleWitness {
    Rational alpha;  // in (0, 1)
    std::vector<Convergent> approximants;
};

// Materialized construction x(m) = sum 1/q_j, q_1 = m, q_{j+1} = q_j^{q_j}.
struct LiouvilleConstruction {
    long m = 2;
    long requested_depth = 0;
    std::shared_ptr<const LiouvilleLevels> levels;
    std::vector<LogMagnitude> q_log2;  // log2 bounds for q_1..q_{J+1}
    bool truncated = false;

    long depth() const { return levels ? levels->depth() : 0; }
};

struct ConstructionResult {
    RotationNumber x;
    LiouvilleWitness witness;  // alpha = 1/m by default
    LiouvilleConstruction construction;
};

// Prop-5-style construction; depth is truncated (with the flag set) when
// exact q_j would exceed the bit budget. Witness approximants are the exact
// partial sums; their bound is certified through the tail chain
// tail_j <= 2/q_{j+1} <= (1/m)^{q_j}.
ConstructionResult construct_liouville(long m, long depth,
                                       std::optional<Rational> alpha_override = std::nullopt,
                                       long max_bits = 1 << 16);

enum class CheckStatus { Pass, Fail, Precision };

struct ApproximantCheck {
    std::size_t j = 0;          // 1-based index into the witness list
    CheckStatus status = CheckStatus::Precision;
    LogMagnitude distance_log2;  // |x - p_j/q_j|
    LogMagnitude bound_log2;     // alpha^{q_j}
};

struct WitnessVerification {
    bool all_pass = false;
    std::vector<ApproximantCheck> checks;
    std::optional<std::size_t> first_fail;
};

WitnessVerification verify_liouville_witness(const RotationNumber& x, const LiouvilleWitness& w,
                                             const PrecisionPolicy& policy = {});

struct DiophantineVerification {
    bool pass = false;
    BigInt horizon = 0;
    std::optional<BigInt> first_violation_q;
    Rational tightest_margin_q = 0;   // q where q^delta*||q*x|| - c is smallest
    Interval tightest_margin;         // that value of q^delta*||q*x||
    AsymptoticJustification justification = AsymptoticJustification::AssertedByUser;

    DiophantineVerification() : tightest_margin(Interval::of_long(0, 64)) {}
};

// Checks q_k^delta * ||q_k x|| >= c on every convergent with q_k <= Q.
// Convergents suffice for all q: best approximations minimize ||q x||, so
// for q_k <= q < q_{k+1}, q^delta*||q x|| >= q_k^delta*||q_k x||.
DiophantineVerification verify_diophantine(const RotationNumber& x,
                                           const DiophantineCertificate& cert, const BigInt& Q,
                                           const PrecisionPolicy& policy = {});

// Largest c (rounded down a little) making (c, delta=1) pass up to Q, for
// representations with certified convergents. Periodic expansions get the
// PeriodicCF justification.
std::optional<DiophantineCertificate> suggest_certificate(const RotationNumber& x, const BigInt& Q,
                                                          const PrecisionPolicy& policy = {});

}  // namespace rotospec

#endif  // ROTOSPEC_CERTIFICATES_HPP

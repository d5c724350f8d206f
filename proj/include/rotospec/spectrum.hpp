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
#ifndef ROTOSPEC_SPECTRUM_HPP
#define ROTOSPEC_SPECTRUM_HPP

#include <string>
#include <variant>
#include <vector>

#include "rotospec/certificates.hpp"
#include "rotospec/rotation.hpp"
#include "rotospec/rotation_number.hpp"

namespace rotospec {

// H0(D): analytic functions vanishing at 0 (indices n >= 1); H(D): all
// analytic functions (n >= 0). The membership criterion is only available
// for H0.
enum class SpaceTag { H0, H };

// A point lambda: on-circle angle e^{2*pi*i*y}, orbit point r^n, or a
// complex number with exact rational coordinates.
class LambdaPoint {
  public:
    enum class Kind { Angle, Orbit, Complex };

    static LambdaPoint angle(RotationNumber y);
    static LambdaPoint orbit(long n);
    static LambdaPoint complex_rational(Rational re, Rational im);

    Kind kind() const { return kind_; }
    const RotationNumber& angle_value() const;
    long orbit_index() const { return orbit_n_; }
    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    // angle:<x-form> | orbit:n | complex:re,im
    std::string descriptor() const;
    static LambdaPoint parse(const std::string& descriptor);

  private:
    LambdaPoint() = default;
    Kind kind_ = Kind::Angle;
    std::optional<RotationNumber> angle_;
    long orbit_n_ = 0;
    Rational re_, im_;
};

struct CriterionConfig {
    std::vector<Rational> alpha_grid = {Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                        Rational(9, 10)};
    std::optional<Rational> beta_override;  // single-run beta; default rule (1+alpha)/2
    long N = 10000;
    bool tail_diophantine = true;
    long blowup_log2 = 64;  // witness threshold: a single term >= 2^64
    PrecisionPolicy policy;
    bool parallel = true;

    Rational beta_for(const Rational& alpha) const {
        if (beta_override) return *beta_override;
        Rational b = (1 + alpha) / 2;
        b.canonicalize();
        return b;
    }
};

// --- criterion --------------------------------------------------------------

struct AlphaCriterionResult {
    enum class Overall { Bounded, UnboundedWitness, Inconclusive };

    Rational alpha, beta;
    Interval finite_sup;        // sup over n <= N of (alpha/beta)^n / |r^n - lambda|
    long sup_argmax = 0;
    std::optional<Interval> tail_bound;  // certified bound on the n > N tail, if available
    std::string tail_note;
    Overall overall = Overall::Inconclusive;
    std::optional<Interval> bound_C;  // Bounded: enclosure of the full sup
    long witness_n = 0;               // UnboundedWitness
    LogMagnitude witness_value;

    AlphaCriterionResult() : finite_sup(Interval::of_long(0, 64)) {}
};

struct CriterionReport {
    std::vector<AlphaCriterionResult> per_alpha;
    bool exact_periodic = false;  // rational x: sup computed over one exact period
};

// Prop-2(ii) check for lambda = e^{2*pi*i*y} with rational y. Throws
// EigenCollision when some n <= N has r^n = lambda provably.
CriterionReport criterion_check(const RotationNumber& x, const Rational& y,
                                const CriterionConfig& cfg,
                                const std::optional<DiophantineCertificate>& cert = std::nullopt);

// --- contradiction scan -------------------------------------------------------

struct GrowthEntry {
    std::size_t j = 0;
    BigInt q;
    LogMagnitude growth;  // (beta/alpha)^{q_j} / (2*pi*q_j)
};

struct ContradictionScan {
    enum class Verdict { Diverges, Inconclusive };
    std::vector<GrowthEntry> entries;
    Verdict verdict = Verdict::Inconclusive;
    std::size_t first_crossing_j = 0;  // first j with growth >= 2^64 (0 = none)
};

// Growth of (beta/alpha)^{q_j} / (2*pi*q_j); divergence refutes every
// resolvent bound M, which is the Lemma-4 contradiction.
ContradictionScan liouville_contradiction_scan(const LiouvilleWitness& w, const Rational& beta,
                                               const PrecisionPolicy& policy = {});

// --- point spectrum -----------------------------------------------------------

struct PointSpectrumEntry {
    long monomial_n = 0;  // eigenvector z^monomial_n
    std::optional<Rational> exact_angle;
    std::optional<Interval> angle_enclosure;
    bool infinite_multiplicity = false;
};

struct PointSpectrumReport {
    bool finite = false;  // rational x: the whole spectrum is {r^j : j < m}
    BigInt order_m = 0;   // 0 for irrational x
    std::vector<PointSpectrumEntry> entries;
};

PointSpectrumReport point_spectrum(const RotationNumber& x, SpaceTag space, long count,
                                   const PrecisionPolicy& policy = {});

// --- verdicts ------------------------------------------------------------------

struct EvidenceEigenvalue {
    long n = 0;
    std::string eigenvector_note;
};
struct EvidenceLiouvilleContradiction {
    std::size_t j = 0;
    BigInt q;
    LogMagnitude growth;
    Rational alpha, beta;
};
struct EvidenceOffCircleResolvent {
    Interval delta;
    EvidenceOffCircleResolvent() : delta(Interval::of_long(0, 64)) {}
};
struct EvidenceRootOfUnityGap {
    BigInt order_m;
    Interval min_gap;
    EvidenceRootOfUnityGap() : min_gap(Interval::of_long(0, 64)) {}
};
struct EvidenceDiophantineTailBound {
    DiophantineCertificate cert;
    Interval horizon_sup;   // max finite_sup over the alpha grid
    Interval tail_bound;    // max certified tail over the grid
    EvidenceDiophantineTailBound()
        : horizon_sup(Interval::of_long(0, 64)), tail_bound(Interval::of_long(0, 64)) {}
};
struct UndeterminedInfo {
    std::optional<Interval> finite_horizon_sup;
    long N = 0;
    std::string reason;
};

struct SpectralVerdict {
    enum class Kind { Eigenvalue, InSpectrum, NotInSpectrum, Undetermined };

    Kind kind = Kind::Undetermined;
    std::variant<EvidenceEigenvalue, EvidenceLiouvilleContradiction, EvidenceOffCircleResolvent,
                 EvidenceRootOfUnityGap, EvidenceDiophantineTailBound, UndeterminedInfo>
        evidence = UndeterminedInfo{};

    static SpectralVerdict eigenvalue(EvidenceEigenvalue e);
    static SpectralVerdict in_spectrum(EvidenceLiouvilleContradiction e);
    static SpectralVerdict not_in_spectrum_off_circle(EvidenceOffCircleResolvent e);
    static SpectralVerdict not_in_spectrum_root_gap(EvidenceRootOfUnityGap e);
    static SpectralVerdict not_in_spectrum_dioph(EvidenceDiophantineTailBound e);
    static SpectralVerdict undetermined(UndeterminedInfo info);

    std::string kind_name() const;
};

struct CertificateBundle {
    std::optional<DiophantineCertificate> dioph;
    std::optional<LiouvilleWitness> witness;
    BigInt dioph_horizon = 1000000;  // verification horizon for supplied/derived certs
    bool auto_derive = true;         // derive certificates/witnesses from x when absent
};

// Decision order: off-circle resolvent bound, eigen detection, root-of-unity
// finite spectrum, Liouville contradiction, Diophantine criterion, otherwise
// an honest Undetermined with finite-horizon data.
SpectralVerdict classify(const RotationNumber& x, const LambdaPoint& lambda, SpaceTag space,
                         const CriterionConfig& cfg = {}, const CertificateBundle& certs = {});

}  // namespace rotospec

#endif  // ROTOSPEC_SPECTRUM_HPP

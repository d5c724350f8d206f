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
#include "rotospec/spectrum.hpp"

#include <algorithm>

#include "rotospec/kernels.hpp"

namespace rotospec {

// ---------------------------------------------------------------------------
// LambdaPoint
// ---------------------------------------------------------------------------

LambdaPoint LambdaPoint::angle(RotationNumber y) {
    LambdaPoint p;
    p.kind_ = Kind::Angle;
    p.angle_ = std::move(y);
    return p;
}

LambdaPoint LambdaPoint::orbit(long n) {
    if (n < 0) throw DomainError("orbit index must be >= 0");
    LambdaPoint p;
    p.kind_ = Kind::Orbit;
    p.orbit_n_ = n;
    return p;
}

LambdaPoint LambdaPoint::complex_rational(Rational re, Rational im) {
    LambdaPoint p;
    p.kind_ = Kind::Complex;
    p.re_ = std::move(re);
    p.im_ = std::move(im);
    p.re_.canonicalize();
    p.im_.canonicalize();
    return p;
}

const RotationNumber& LambdaPoint::angle_value() const {
    if (!angle_) throw DomainError("lambda point carries no angle");
    return *angle_;
}

std::string LambdaPoint::descriptor() const {
    switch (kind_) {
        case Kind::Angle:
            return "angle:" + angle_->descriptor();
        case Kind::Orbit:
            return "orbit:" + std::to_string(orbit_n_);
        case Kind::Complex:
        default:
            return "complex:" + re_.get_str() + "," + im_.get_str();
    }
}

LambdaPoint LambdaPoint::parse(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) {
        throw DomainError("lambda descriptor needs a form prefix (angle:, orbit:, complex:)");
    }
    std::string form = descriptor.substr(0, colon);
    std::string body = descriptor.substr(colon + 1);
    if (form == "angle") return LambdaPoint::angle(RotationNumber::parse(body));
    if (form == "orbit") {
        try {
            return LambdaPoint::orbit(std::stol(body));
        } catch (const std::exception&) {
            throw DomainError("unparseable orbit index: " + body);
        }
    }
    if (form == "complex") {
        auto comma = body.find(',');
        if (comma == std::string::npos) throw DomainError("complex form is complex:re,im");
        return LambdaPoint::complex_rational(parse_rational(body.substr(0, comma)),
                                             parse_rational(body.substr(comma + 1)));
    }
    throw DomainError("unknown lambda form: " + form);
}

// ---------------------------------------------------------------------------
// criterion
// ---------------------------------------------------------------------------

namespace {

Interval exp2_interval(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    Real l(prec), h(prec);
    mpfr_exp2(l.get(), lo.get(), MPFR_RNDD);
    mpfr_exp2(h.get(), hi.get(), MPFR_RNDU);
    return Interval(std::move(l), std::move(h));
}

// sup_{n>N} n^delta * rho^n over the integers, as a certified upper bound
// in log2 space. The map is unimodal with peak at delta/ln(1/rho).
Real tail_sup_log2_hi(const Rational& delta, const Rational& rho, long N, mpfr_prec_t prec) {
    Real ln_rho_inv_lo(prec);
    {
        Real t(prec);
        mpfr_set_q(t.get(), rho.get_mpq_t(), MPFR_RNDU);
        mpfr_log(ln_rho_inv_lo.get(), t.get(), MPFR_RNDU);  // ln(rho) upper (negative)
        mpfr_neg(ln_rho_inv_lo.get(), ln_rho_inv_lo.get(), MPFR_RNDD);  // ln(1/rho) lower
    }
    Real peak_hi(prec);
    mpfr_set_q(peak_hi.get(), delta.get_mpq_t(), MPFR_RNDU);
    mpfr_div(peak_hi.get(), peak_hi.get(), ln_rho_inv_lo.get(), MPFR_RNDU);

    long peak_ceiling;
    if (mpfr_cmp_si(peak_hi.get(), 1L << 40) >= 0) {
        throw PrecisionError("criterion tail peak out of range");
    }
    peak_ceiling = mpfr_get_si(peak_hi.get(), MPFR_RNDU);

    std::vector<long> candidates{N + 1};
    for (long k = std::max(N + 1, peak_ceiling - 2); k <= peak_ceiling + 1; ++k) {
        if (k > N) candidates.push_back(k);
    }
    Real best(prec);
    mpfr_set_inf(best.get(), -1);
    LogMagnitude log_rho = LogMagnitude::of_rational(rho, prec);
    for (long k : candidates) {
        LogMagnitude g =
            LogMagnitude::of_rational(Rational(k), prec).pow_rational(delta).mul(log_rho.pow(BigInt(k)));
        if (mpfr_cmp(g.hi().get(), best.get()) > 0) mpfr_set(best.get(), g.hi().get(), MPFR_RNDU);
    }
    return best;
}

// Certified tail bound sup_{n>N} (alpha/beta)^n / |r^n - lambda| <=
// v^(1+delta)/(4c) * sup_{n>N} n^delta rho^n, via |r^n - e^{2 pi i u/v}| >=
// 4*||n x - u/v|| >= 4c/(v^(1+delta) n^delta) for a Diophantine x.
Interval diophantine_tail_bound(const DiophantineCertificate& cert, const Rational& y,
                                const Rational& rho, long N, mpfr_prec_t prec) {
    BigInt v = y.get_den();
    Rational one_plus_delta = 1 + cert.delta;
    LogMagnitude K = LogMagnitude::of_rational(Rational(v), prec)
                         .pow_rational(one_plus_delta)
                         .div(LogMagnitude::of_rational(4 * cert.c, prec));
    Real g_hi = tail_sup_log2_hi(cert.delta, rho, N, prec);
    Real hi(prec);
    mpfr_add(hi.get(), K.hi().get(), g_hi.get(), MPFR_RNDU);
    mpfr_exp2(hi.get(), hi.get(), MPFR_RNDU);
    Real lo(prec);
    mpfr_set_zero(lo.get(), 1);
    return Interval(std::move(lo), std::move(hi));
}

AlphaCriterionResult criterion_for_alpha_rational_x(const RotationNumber& x, const Rational& y,
                                                    const Rational& alpha, const Rational& beta,
                                                    const CriterionConfig& cfg) {
    // Exact period: every n lies in a residue class mod m with a fixed
    // divisor; within a class (alpha/beta)^n is maximal at the smallest n,
    // so the finite maximum below is the true sup over all of N.
    const Rational& v = x.rational_value();
    if (!v.get_den().fits_slong_p() || v.get_den().get_si() > 10000000L) {
        throw PrecisionError("rational angle period too large for the exact criterion scan");
    }
    long m = v.get_den().get_si();
    Rational rho = alpha / beta;
    rho.canonicalize();
    mpfr_prec_t prec = cfg.policy.initial_bits;
    LogMagnitude log_rho = LogMagnitude::of_rational(rho, prec);

    AlphaCriterionResult res;
    res.alpha = alpha;
    res.beta = beta;
    Real max_lo(prec), max_hi(prec);
    mpfr_set_inf(max_lo.get(), -1);
    mpfr_set_inf(max_hi.get(), -1);
    for (long j = 1; j <= m; ++j) {
        DivisorEnclosure div = small_divisor(x, BigInt(j), y, cfg.policy);
        if (div.exact_zero) throw EigenCollision(j);
        if (!div.log2) throw PrecisionError("cannot certify divisor at n=" + std::to_string(j));
        LogMagnitude term = log_rho.pow(BigInt(j)).div(*div.log2);
        if (mpfr_cmp(term.lo().get(), max_lo.get()) > 0) {
            mpfr_set(max_lo.get(), term.lo().get(), MPFR_RNDD);
        }
        if (mpfr_cmp(term.hi().get(), max_hi.get()) > 0) {
            mpfr_set(max_hi.get(), term.hi().get(), MPFR_RNDU);
            res.sup_argmax = j;
        }
    }
    res.finite_sup = exp2_interval(max_lo, max_hi, prec);
    res.tail_bound = Interval::of_long(0, prec);
    res.tail_note = "exact over one period; terms only shrink at n + km";
    res.overall = AlphaCriterionResult::Overall::Bounded;
    res.bound_C = res.finite_sup;
    return res;
}

AlphaCriterionResult criterion_for_alpha(const RotationNumber& x, const Rational& y,
                                         const Rational& alpha, const Rational& beta,
                                         const CriterionConfig& cfg,
                                         const std::optional<DiophantineCertificate>& cert) {
    if (sgn(alpha) <= 0 || alpha >= 1) throw DomainError("alpha must lie in (0, 1)");
    if (beta <= alpha || beta >= 1) throw DomainError("beta must lie in (alpha, 1)");
    if (x.is_rational()) return criterion_for_alpha_rational_x(x, y, alpha, beta, cfg);

    Rational rho = alpha / beta;
    rho.canonicalize();
    mpfr_prec_t prec = cfg.policy.initial_bits;
    auto scan = cfg.parallel
                    ? kernels::criterion_term_scan_parallel(x, y, rho, cfg.N, cfg.blowup_log2,
                                                            cfg.policy)
                    : kernels::criterion_term_scan_serial(x, y, rho, cfg.N, cfg.blowup_log2,
                                                          cfg.policy);
    if (scan.eigen_collision_n != 0) throw EigenCollision(scan.eigen_collision_n);

    AlphaCriterionResult res;
    res.alpha = alpha;
    res.beta = beta;
    res.finite_sup = exp2_interval(scan.sup_log2_lo, scan.sup_log2_hi, prec);
    res.sup_argmax = scan.argmax_n;

    if (scan.first_blowup_n != 0) {
        res.overall = AlphaCriterionResult::Overall::UnboundedWitness;
        res.witness_n = scan.first_blowup_n;
        res.witness_value = scan.blowup_term;
        res.tail_note = "single term certified >= 2^" + std::to_string(cfg.blowup_log2);
        return res;
    }
    if (cert && cfg.tail_diophantine) {
        res.tail_bound = diophantine_tail_bound(*cert, y, rho, cfg.N, prec);
        res.tail_note = "diophantine tail: sup_{n>N} v^(1+delta)/(4c) n^delta (alpha/beta)^n";
        res.overall = AlphaCriterionResult::Overall::Bounded;
        Real c_hi(prec);
        mpfr_max(c_hi.get(), res.finite_sup.hi().get(), res.tail_bound->hi().get(), MPFR_RNDU);
        res.bound_C = Interval(res.finite_sup.lo(), c_hi);
        return res;
    }
    res.tail_note = "no certificate applies; the tail beyond N is unknown";
    res.overall = AlphaCriterionResult::Overall::Inconclusive;
    return res;
}

}  // namespace

CriterionReport criterion_check(const RotationNumber& x, const Rational& y,
                                const CriterionConfig& cfg,
                                const std::optional<DiophantineCertificate>& cert) {
    CriterionReport report;
    report.exact_periodic = x.is_rational();
    for (const auto& alpha : cfg.alpha_grid) {
        report.per_alpha.push_back(criterion_for_alpha(x, y, alpha, cfg.beta_for(alpha), cfg, cert));
    }
    return report;
}

// ---------------------------------------------------------------------------
// contradiction scan
// ---------------------------------------------------------------------------

ContradictionScan liouville_contradiction_scan(const LiouvilleWitness& w, const Rational& beta,
                                               const PrecisionPolicy& policy) {
    if (beta <= w.alpha) throw DomainError("beta must exceed the witness alpha");
    if (beta >= 1) throw DomainError("beta must lie in (alpha, 1)");
    mpfr_prec_t prec = policy.initial_bits;
    Rational ratio = beta / w.alpha;
    ratio.canonicalize();
    LogMagnitude log_ratio = LogMagnitude::of_rational(ratio, prec);
    LogMagnitude log_two_pi = LogMagnitude::of_interval(Interval::two_pi(prec), prec);

    ContradictionScan scan;
    std::size_t j = 0;
    for (const auto& appr : w.approximants) {
        ++j;
        GrowthEntry entry;
        entry.j = j;
        entry.q = appr.q;
        entry.growth = log_ratio.pow(appr.q).div(
            log_two_pi.mul(LogMagnitude::of_rational(Rational(appr.q), prec)));
        if (scan.first_crossing_j == 0 &&
            entry.growth.geq_log2(64) == std::optional<bool>(true)) {
            scan.first_crossing_j = j;
        }
        scan.entries.push_back(std::move(entry));
    }
    bool increasing = scan.entries.size() >= 2;
    for (std::size_t i = 0; i + 1 < scan.entries.size(); ++i) {
        if (mpfr_cmp(scan.entries[i + 1].growth.lo().get(), scan.entries[i].growth.hi().get()) <=
            0) {
            increasing = false;
            break;
        }
    }
    bool last_crossed = !scan.entries.empty() &&
                        scan.entries.back().growth.geq_log2(64) == std::optional<bool>(true);
    scan.verdict = (increasing && last_crossed) ? ContradictionScan::Verdict::Diverges
                                                : ContradictionScan::Verdict::Inconclusive;
    return scan;
}

// ---------------------------------------------------------------------------
// point spectrum
// ---------------------------------------------------------------------------

PointSpectrumReport point_spectrum(const RotationNumber& x, SpaceTag space, long count,
                                   const PrecisionPolicy& policy) {
    PointSpectrumReport report;
    if (x.is_rational()) {
        const Rational& v = x.rational_value();
        if (!v.get_den().fits_slong_p() || v.get_den().get_si() > 1000000L) {
            throw PrecisionError("root-of-unity order too large to enumerate");
        }
        long m = v.get_den().get_si();
        report.finite = true;
        report.order_m = m;
        for (long j = 0; j < m; ++j) {
            PointSpectrumEntry e;
            e.exact_angle = frac_part(Rational(j) * v);
            e.infinite_multiplicity = true;
            e.monomial_n = (space == SpaceTag::H0 && j == 0) ? m : j;
            report.entries.push_back(std::move(e));
        }
        return report;
    }
    if (count < 1) throw DomainError("point_spectrum needs count >= 1 for irrational x");
    report.finite = false;
    report.order_m = 0;
    long start = space == SpaceTag::H0 ? 1 : 0;
    for (long i = 0; i < count; ++i) {
        long n = start + i;
        PointSpectrumEntry e;
        e.monomial_n = n;
        e.infinite_multiplicity = false;
        if (n == 0) {
            e.exact_angle = Rational(0);
        } else {
            auto pt = kernels::frac_point(x, n, policy.initial_bits);
            e.angle_enclosure = Interval(pt.lo, pt.hi);
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

// ---------------------------------------------------------------------------
// verdict factories
// ---------------------------------------------------------------------------

SpectralVerdict SpectralVerdict::eigenvalue(EvidenceEigenvalue e) {
    return SpectralVerdict{Kind::Eigenvalue, std::move(e)};
}
SpectralVerdict SpectralVerdict::in_spectrum(EvidenceLiouvilleContradiction e) {
    return SpectralVerdict{Kind::InSpectrum, std::move(e)};
}
SpectralVerdict SpectralVerdict::not_in_spectrum_off_circle(EvidenceOffCircleResolvent e) {
    return SpectralVerdict{Kind::NotInSpectrum, std::move(e)};
}
SpectralVerdict SpectralVerdict::not_in_spectrum_root_gap(EvidenceRootOfUnityGap e) {
    return SpectralVerdict{Kind::NotInSpectrum, std::move(e)};
}
SpectralVerdict SpectralVerdict::not_in_spectrum_dioph(EvidenceDiophantineTailBound e) {
    return SpectralVerdict{Kind::NotInSpectrum, std::move(e)};
}
SpectralVerdict SpectralVerdict::undetermined(UndeterminedInfo info) {
    return SpectralVerdict{Kind::Undetermined, std::move(info)};
}

std::string SpectralVerdict::kind_name() const {
    switch (kind) {
        case Kind::Eigenvalue: return "Eigenvalue";
        case Kind::InSpectrum: return "InSpectrum";
        case Kind::NotInSpectrum: return "NotInSpectrum";
        case Kind::Undetermined:
        default: return "Undetermined";
    }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

namespace {

SpectralVerdict classify_off_circle_or_reduce(const RotationNumber& x, const LambdaPoint& lambda,
                                              SpaceTag space, const CriterionConfig& cfg,
                                              const CertificateBundle& certs);

// Exact distance from an angle y (any representation) to the grid (1/m)Z:
// min_k ||y - k/m|| = ||m*y|| / m.
DistanceEnclosure grid_distance(const RotationNumber& y, long m, const PrecisionPolicy& policy) {
    DistanceEnclosure d = multiple_distance(y, BigInt(m), Rational(0), policy);
    DistanceEnclosure out;
    out.exact_zero = d.exact_zero;
    out.rlo = d.rlo / m;
    out.rhi = d.rhi / m;
    out.rlo.canonicalize();
    out.rhi.canonicalize();
    if (d.log2) {
        mpfr_prec_t prec = policy.initial_bits;
        out.log2 = d.log2->div(LogMagnitude::of_rational(Rational(m), prec));
    }
    return out;
}

// x rational of order m: lambda is an eigenvalue iff its angle lies on the
// grid k/m; otherwise the finite spectrum leaves a positive gap.
SpectralVerdict classify_rational_x(const RotationNumber& x, const RotationNumber& y_angle,
                                    SpaceTag space, const CriterionConfig& cfg) {
    const Rational& v = x.rational_value();
    if (!v.get_den().fits_slong_p() || v.get_den().get_si() > 1000000L) {
        return SpectralVerdict::undetermined(
            UndeterminedInfo{std::nullopt, cfg.N, "root-of-unity order too large"});
    }
    long m = v.get_den().get_si();
    if (y_angle.is_rational()) {
        Rational ym = y_angle.rational_value() * m;
        ym.canonicalize();
        if (ym.get_den() == 1) {
            // grid hit: solve j*p = k (mod m)
            BigInt k = ym.get_num() % m;
            BigInt pinv;
            if (m == 1) {
                k = 0;
                pinv = 0;
            } else if (mpz_invert(pinv.get_mpz_t(), v.get_num().get_mpz_t(),
                                  BigInt(m).get_mpz_t()) == 0) {
                throw DomainError("internal: numerator not invertible mod m");
            }
            long j = m == 1 ? 0 : BigInt((k * pinv) % m).get_si();
            long monomial = (space == SpaceTag::H0 && j == 0) ? m : j;
            return SpectralVerdict::eigenvalue(EvidenceEigenvalue{
                monomial, "C(z^n) = r^" + std::to_string(j) + " z^n for n = " +
                              std::to_string(monomial) + " + k*" + std::to_string(m) +
                              "; kernel infinite-dimensional"});
        }
    }
    DistanceEnclosure dist = grid_distance(y_angle, m, cfg.policy);
    if (dist.exact_zero) {
        // irrational representations never land on the grid; rational ones
        // were handled above
        throw DomainError("internal: unexpected exact grid hit");
    }
    DivisorEnclosure gap = divisor_from_distance(dist, cfg.policy.initial_bits);
    if (!gap.log2) {
        return SpectralVerdict::undetermined(UndeterminedInfo{
            std::nullopt, cfg.N, "cannot separate lambda from the finite spectrum"});
    }
    EvidenceRootOfUnityGap ev;
    ev.order_m = m;
    if (gap.interval) {
        ev.min_gap = *gap.interval;
    } else if (auto iv = gap.log2->to_interval(cfg.policy.initial_bits)) {
        ev.min_gap = *iv;
    }
    return SpectralVerdict::not_in_spectrum_root_gap(std::move(ev));
}

// Same-representation eigen detection for irrational x: is y = frac(n*x)
// provably for some n >= 1?
std::optional<long> exact_eigen_index(const RotationNumber& x, const RotationNumber& y) {
    if (x.kind() == RotationNumber::Kind::Surd && y.kind() == RotationNumber::Kind::Surd) {
        const QuadraticSurd& sx = x.surd_value();
        const QuadraticSurd& sy = y.surd_value();
        if (sx.d != sy.d) return std::nullopt;  // distinct fields never meet
        // need n*bx*cy == by*cx with integer n >= 1
        BigInt num = sy.b * sx.c;
        BigInt den = sx.b * sy.c;
        if (sgn(den) == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
            return std::nullopt;
        }
        BigInt n = num / den;
        if (sgn(n) <= 0 || !n.fits_slong_p()) return std::nullopt;
        // rational part of n*x - y must be an integer
        Rational rest = Rational(n * sx.a, sx.c) - Rational(sy.a, sy.c);
        rest.canonicalize();
        if (rest.get_den() == 1) return n.get_si();
        return std::nullopt;
    }
    if (x.kind() == RotationNumber::Kind::Liouville && y.kind() == RotationNumber::Kind::Liouville) {
        if (x.liouville_levels().m == y.liouville_levels().m) return 1;  // same value
        return std::nullopt;
    }
    return std::nullopt;
}

LiouvilleWitness witness_from_levels(const LiouvilleLevels& lv) {
    LiouvilleWitness w;
    w.alpha = Rational(1, lv.m);
    for (long j = 1; j <= lv.depth(); ++j) {
        const Rational& s = lv.partial[static_cast<std::size_t>(j - 1)];
        w.approximants.push_back(
            Convergent{s.get_num(), s.get_den(), static_cast<std::size_t>(j - 1)});
    }
    return w;
}

SpectralVerdict classify_lambda_one(const RotationNumber& x, SpaceTag space,
                                    const CriterionConfig& cfg, const CertificateBundle& certs) {
    if (space == SpaceTag::H) {
        // 1 = r^0 is always an eigenvalue of C on H(D) (constants).
        return SpectralVerdict::eigenvalue(EvidenceEigenvalue{0, "C(1) = 1; constants lie in H(D)"});
    }

    // (d) Liouville witness route -> 1 in the spectrum
    std::optional<LiouvilleWitness> witness = certs.witness;
    if (!witness && certs.auto_derive && x.kind() == RotationNumber::Kind::Liouville) {
        witness = witness_from_levels(x.liouville_levels());
    }
    if (witness) {
        WitnessVerification ver = verify_liouville_witness(x, *witness, cfg.policy);
        if (ver.all_pass && !witness->approximants.empty()) {
            Rational beta = cfg.beta_for(witness->alpha);
            ContradictionScan scan = liouville_contradiction_scan(*witness, beta, cfg.policy);
            if (scan.verdict == ContradictionScan::Verdict::Diverges &&
                scan.first_crossing_j != 0) {
                const GrowthEntry& entry = scan.entries[scan.first_crossing_j - 1];
                return SpectralVerdict::in_spectrum(EvidenceLiouvilleContradiction{
                    entry.j, entry.q, entry.growth, witness->alpha, beta});
            }
        }
    }

    // (e) Diophantine certificate route -> 1 not in the spectrum
    std::optional<DiophantineCertificate> cert = certs.dioph;
    if (!cert && certs.auto_derive && x.kind() == RotationNumber::Kind::Surd) {
        cert = suggest_certificate(x, certs.dioph_horizon, cfg.policy);
    }
    if (cert) {
        try {
            DiophantineVerification ver = verify_diophantine(x, *cert, certs.dioph_horizon,
                                                             cfg.policy);
            if (ver.pass) {
                DiophantineCertificate verified = *cert;
                verified.verified_up_to_q = ver.horizon;
                verified.justification = ver.justification;
                CriterionReport rep = criterion_check(x, Rational(0), cfg, verified);
                bool all_bounded = !rep.per_alpha.empty();
                for (const auto& r : rep.per_alpha) {
                    if (r.overall != AlphaCriterionResult::Overall::Bounded) all_bounded = false;
                }
                if (all_bounded) {
                    EvidenceDiophantineTailBound ev;
                    ev.cert = verified;
                    Real sup_lo(cfg.policy.initial_bits), sup_hi(cfg.policy.initial_bits);
                    Real tail_hi(cfg.policy.initial_bits);
                    mpfr_set_inf(sup_lo.get(), -1);
                    mpfr_set_inf(sup_hi.get(), -1);
                    mpfr_set_inf(tail_hi.get(), -1);
                    for (const auto& r : rep.per_alpha) {
                        mpfr_max(sup_lo.get(), sup_lo.get(), r.finite_sup.lo().get(), MPFR_RNDD);
                        mpfr_max(sup_hi.get(), sup_hi.get(), r.finite_sup.hi().get(), MPFR_RNDU);
                        if (r.tail_bound) {
                            mpfr_max(tail_hi.get(), tail_hi.get(), r.tail_bound->hi().get(),
                                     MPFR_RNDU);
                        }
                    }
                    ev.horizon_sup = Interval(sup_lo, sup_hi);
                    Real zero(cfg.policy.initial_bits);
                    mpfr_set_zero(zero.get(), 1);
                    ev.tail_bound = Interval(zero, tail_hi);
                    return SpectralVerdict::not_in_spectrum_dioph(std::move(ev));
                }
                for (const auto& r : rep.per_alpha) {
                    if (r.overall == AlphaCriterionResult::Overall::UnboundedWitness) {
                        return SpectralVerdict::undetermined(UndeterminedInfo{
                            r.finite_sup, cfg.N,
                            "criterion term blow-up at n=" + std::to_string(r.witness_n) +
                                " conflicts with the certificate; out of certified range"});
                    }
                }
            }
        } catch (const PrecisionError& e) {
            return SpectralVerdict::undetermined(UndeterminedInfo{std::nullopt, cfg.N, e.what()});
        }
    }

    // (f) honest finite-horizon report
    UndeterminedInfo info;
    info.N = cfg.N;
    info.reason = "no verified witness or certificate applies to lambda = 1";
    try {
        CriterionConfig probe = cfg;
        probe.alpha_grid = {Rational(1, 2)};
        probe.tail_diophantine = false;
        CriterionReport rep = criterion_check(x, Rational(0), probe, std::nullopt);
        if (!rep.per_alpha.empty()) info.finite_horizon_sup = rep.per_alpha.front().finite_sup;
    } catch (const std::exception&) {
    }
    return SpectralVerdict::undetermined(std::move(info));
}

SpectralVerdict classify_angle(const RotationNumber& x, const RotationNumber& y, SpaceTag space,
                               const CriterionConfig& cfg, const CertificateBundle& certs) {
    // (c) rational x: finite spectrum
    if (x.is_rational()) return classify_rational_x(x, y, space, cfg);

    // (b) eigen detection against the orbit
    if (y.is_rational()) {
        if (sgn(y.rational_value()) == 0) return classify_lambda_one(x, space, cfg, certs);
        // frac(n*x) is irrational for irrational x, so a nonzero rational
        // angle is never an eigenvalue; no decision path applies beyond the
        // finite-horizon scan.
        UndeterminedInfo info;
        info.N = cfg.N;
        info.reason = "rational angle != 0: the paper decides only lambda = 1 for irrational x";
        try {
            CriterionConfig probe = cfg;
            probe.alpha_grid = {Rational(1, 2)};
            probe.tail_diophantine = false;
            CriterionReport rep = criterion_check(x, y.rational_value(), probe, std::nullopt);
            if (!rep.per_alpha.empty()) info.finite_horizon_sup = rep.per_alpha.front().finite_sup;
        } catch (const std::exception&) {
        }
        return SpectralVerdict::undetermined(std::move(info));
    }
    if (auto n = exact_eigen_index(x, y)) {
        if (*n >= 1 || space == SpaceTag::H) {
            return SpectralVerdict::eigenvalue(
                EvidenceEigenvalue{*n, "C(z^n) = r^n z^n at n = " + std::to_string(*n)});
        }
    }
    return SpectralVerdict::undetermined(UndeterminedInfo{
        std::nullopt, cfg.N,
        "irrational lambda angle with no provable rational relation to x (density only)"});
}

SpectralVerdict classify_off_circle_or_reduce(const RotationNumber& x, const LambdaPoint& lambda,
                                              SpaceTag space, const CriterionConfig& cfg,
                                              const CertificateBundle& certs) {
    const Rational& re = lambda.re();
    const Rational& im = lambda.im();
    Rational s2 = re * re + im * im;
    s2.canonicalize();
    if (s2 == 1) {
        // exact points on the circle with a representable angle
        if (im == 0 && re == 1) {
            return classify_angle(x, RotationNumber::rational(Rational(0)), space, cfg, certs);
        }
        if (im == 0 && re == -1) {
            return classify_angle(x, RotationNumber::rational(Rational(1, 2)), space, cfg, certs);
        }
        if (re == 0 && im == 1) {
            return classify_angle(x, RotationNumber::rational(Rational(1, 4)), space, cfg, certs);
        }
        if (re == 0 && im == -1) {
            return classify_angle(x, RotationNumber::rational(Rational(3, 4)), space, cfg, certs);
        }
        return SpectralVerdict::undetermined(UndeterminedInfo{
            std::nullopt, cfg.N, "rational point on the unit circle without representable angle"});
    }
    // |lambda| != 1 exactly: the separation delta = ||lambda| - 1| is
    // certified positive at some refinement.
    for (int round = 0;; ++round) {
        mpfr_prec_t prec = cfg.policy.bits_at(round);
        Interval mod = Interval::point_rational(s2, prec).sqrt();
        Interval delta = mod.sub(Interval::of_long(1, prec)).abs_value();
        if (delta.is_positive()) {
            EvidenceOffCircleResolvent ev;
            ev.delta = delta;
            return SpectralVerdict::not_in_spectrum_off_circle(std::move(ev));
        }
        if (round >= cfg.policy.max_refinements) {
            return SpectralVerdict::undetermined(
                UndeterminedInfo{std::nullopt, cfg.N, "cannot separate |lambda| from 1"});
        }
    }
}

}  // namespace

SpectralVerdict classify(const RotationNumber& x, const LambdaPoint& lambda, SpaceTag space,
                         const CriterionConfig& cfg, const CertificateBundle& certs) {
    try {
        switch (lambda.kind()) {
            case LambdaPoint::Kind::Complex:
                return classify_off_circle_or_reduce(x, lambda, space, cfg, certs);
            case LambdaPoint::Kind::Orbit: {
                long n = lambda.orbit_index();
                if (space == SpaceTag::H0 && n == 0) {
                    return classify_angle(x, RotationNumber::rational(Rational(0)), space, cfg,
                                          certs);
                }
                if (x.is_rational()) {
                    // collapse to the residue class
                    return classify_rational_x(
                        x, RotationNumber::rational(frac_part(Rational(n) * x.rational_value())),
                        space, cfg);
                }
                return SpectralVerdict::eigenvalue(
                    EvidenceEigenvalue{n, "C(z^n) = r^n z^n at n = " + std::to_string(n)});
            }
            case LambdaPoint::Kind::Angle:
            default:
                return classify_angle(x, lambda.angle_value(), space, cfg, certs);
        }
    } catch (const PrecisionError& e) {
        return SpectralVerdict::undetermined(UndeterminedInfo{std::nullopt, cfg.N, e.what()});
    } catch (const EigenCollision& e) {
        return SpectralVerdict::eigenvalue(
            EvidenceEigenvalue{e.index, "divisor vanished: lambda = r^n at n = " +
                                            std::to_string(e.index)});
    }
}

}  // namespace rotospec

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
#include "rotospec/rotation.hpp"

#include <algorithm>
#include <map>

#include "rotospec/kernels.hpp"

namespace rotospec {

namespace {

// Valid for all t in [0, 1/2]: 4t <= 2*sin(pi*t) <= 2*pi*t.
LogMagnitude divisor_log2_linear(const LogMagnitude& t_log2, mpfr_prec_t prec) {
    mpfr_prec_t p = std::max(prec, t_log2.lo().prec());
    Real lo(p), hi(p), l2pi(p);
    mpfr_add_si(lo.get(), t_log2.lo().get(), 2, MPFR_RNDD);
    Real two_pi_hi = Interval::two_pi(p).hi();
    mpfr_log2(l2pi.get(), two_pi_hi.get(), MPFR_RNDU);
    mpfr_add(hi.get(), t_log2.hi().get(), l2pi.get(), MPFR_RNDU);
    return LogMagnitude::of_log2_bounds(std::move(lo), std::move(hi));
}

LogMagnitude intersect(const LogMagnitude& a, const LogMagnitude& b) {
    mpfr_prec_t p = std::max(a.lo().prec(), b.lo().prec());
    Real lo(p), hi(p);
    mpfr_max(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_min(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    if (mpfr_cmp(lo.get(), hi.get()) > 0) {
        // The two enclosures barely disagree through rounding; fall back to
        // the hull, which is always sound.
        mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
        mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    }
    return LogMagnitude::of_log2_bounds(std::move(lo), std::move(hi));
}

const Rational& tiny_threshold() {
    static const Rational t(BigInt(1), BigInt(1) << 64);
    return t;
}

}  // namespace

DivisorEnclosure divisor_from_distance(const DistanceEnclosure& d, mpfr_prec_t prec) {
    DivisorEnclosure out;
    if (d.exact_zero) {
        out.exact_zero = true;
        out.log2 = LogMagnitude::zero();
        out.interval = Interval::of_long(0, prec);
        return out;
    }
    Rational rhi = std::min(d.rhi, Rational(1, 2));
    bool tiny = rhi < tiny_threshold();
    if (!tiny) {
        Interval t = Interval::of_rational_bounds(std::min(d.rlo, rhi), rhi, prec);
        Interval s = interval_sin_pi(t);
        Interval divisor = s.add(s);
        out.interval = divisor;
        if (divisor.is_positive()) {
            out.log2 = LogMagnitude::of_interval(divisor, prec);
            if (d.log2) *out.log2 = intersect(*out.log2, divisor_log2_linear(*d.log2, prec));
        } else if (d.log2) {
            out.log2 = divisor_log2_linear(*d.log2, prec);
        }
    } else if (d.log2) {
        out.log2 = divisor_log2_linear(*d.log2, prec);
    }
    return out;
}

DivisorEnclosure small_divisor(const RotationNumber& x, const BigInt& n, const Rational& y,
                               const PrecisionPolicy& policy) {
    DistanceEnclosure d = multiple_distance(x, n, y, policy);
    if (!d.exact_zero && !d.log2 && x.kind() == RotationNumber::Kind::Ball) {
        throw PrecisionError("insufficient precision: ball cannot separate " + n.get_str() +
                             "*x - y from an integer");
    }
    DivisorEnclosure out = divisor_from_distance(d, policy.initial_bits);
    // exact endpoint cases: distance exactly 1/2 means divisor exactly 2
    if (!d.exact_zero && d.rlo == d.rhi && d.rlo == Rational(1, 2)) {
        out.interval = Interval::point_rational(Rational(2), policy.initial_bits);
        out.log2 = LogMagnitude::of_rational(Rational(2), policy.initial_bits);
    }
    return out;
}

std::vector<DivisorSample> small_divisor_sequence(const RotationNumber& x, const Rational& y,
                                                  long N, const PrecisionPolicy& policy,
                                                  bool parallel) {
    if (N < 1) throw DomainError("divisor sequence horizon must be >= 1");
    if (x.is_rational()) {
        // Exact rational fast path: angles repeat with period q.
        const Rational& v = x.rational_value();
        long q = v.get_den().fits_slong_p() ? v.get_den().get_si() : 0;
        if (q > 0 && q <= N) {
            std::vector<DivisorEnclosure> period;
            period.reserve(q);
            for (long n = 1; n <= q; ++n) {
                period.push_back(small_divisor(x, BigInt(n), y, policy));
            }
            std::vector<DivisorSample> out;
            out.reserve(N);
            for (long n = 1; n <= N; ++n) {
                out.push_back(DivisorSample{n, period[(n - 1) % q]});
            }
            return out;
        }
    }
    return parallel ? kernels::divisor_scan_parallel(x, y, N, policy)
                    : kernels::divisor_scan_serial(x, y, N, policy);
}

// ---------------------------------------------------------------------------
// Orbit gaps
// ---------------------------------------------------------------------------

namespace {

GapReport rational_orbit_gaps(const Rational& v, long N) {
    GapReport report;
    report.requested_n = N;
    const BigInt& q = v.get_den();
    const BigInt& p = v.get_num();
    mpfr_prec_t prec = 128;
    if (q <= N) {
        // Full cycle: every residue j/q appears; q equal gaps of exactly 1/q.
        std::size_t points = static_cast<std::size_t>(q.get_ui());
        Rational gap(BigInt(1), q);
        gap.canonicalize();
        Interval g = Interval::point_rational(gap, prec);
        report.points = points;
        report.distinct.emplace_back(g, points);
        report.max_gap = g;
        return report;
    }
    // Partial cycle: residues n*p mod q for n = 1..N, all distinct.
    std::vector<BigInt> res;
    res.reserve(static_cast<std::size_t>(N));
    BigInt acc(0);
    for (long n = 1; n <= N; ++n) {
        acc += p;
        if (acc >= q) acc -= q;  // p < q, so one subtraction is enough
        res.push_back(acc);
    }
    std::sort(res.begin(), res.end());
    std::map<BigInt, std::size_t> gap_counts;
    for (std::size_t i = 0; i + 1 < res.size(); ++i) gap_counts[res[i + 1] - res[i]]++;
    gap_counts[res.front() + q - res.back()]++;
    report.points = res.size();
    BigInt max_len(0);
    for (const auto& [len, count] : gap_counts) {
        Rational value(len, q);
        value.canonicalize();
        report.distinct.emplace_back(Interval::point_rational(value, prec), count);
        max_len = std::max(max_len, len);
    }
    Rational maxv(max_len, q);
    maxv.canonicalize();
    report.max_gap = Interval::point_rational(maxv, prec);
    return report;
}

}  // namespace

GapReport orbit_gaps(const RotationNumber& x, long N, const PrecisionPolicy& policy,
                     bool parallel) {
    if (N < 2) throw DomainError("orbit_gaps requires N >= 2");
    if (x.is_rational()) return rational_orbit_gaps(x.rational_value(), N);

    for (int round = 0;; ++round) {
        mpfr_prec_t prec = policy.bits_at(round);
        auto pts = parallel ? kernels::orbit_points_parallel(x, N, prec)
                            : kernels::orbit_points_serial(x, N, prec);
        std::sort(pts.begin(), pts.end(), [](const kernels::OrbitPoint& a,
                                             const kernels::OrbitPoint& b) {
            return mpfr_cmp(a.lo.get(), b.lo.get()) < 0;
        });
        bool separated = true;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (mpfr_cmp(pts[i].hi.get(), pts[i + 1].lo.get()) >= 0) {
                separated = false;
                break;
            }
        }
        if (!separated) {
            if (round >= policy.max_refinements) {
                throw PrecisionError("orbit points cannot be separated at max precision");
            }
            continue;
        }

        // gap enclosures between consecutive points, plus the wrap-around gap
        std::vector<Interval> gaps;
        gaps.reserve(pts.size());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            Real lo(prec), hi(prec);
            mpfr_sub(lo.get(), pts[i + 1].lo.get(), pts[i].hi.get(), MPFR_RNDD);
            mpfr_sub(hi.get(), pts[i + 1].hi.get(), pts[i].lo.get(), MPFR_RNDU);
            gaps.emplace_back(std::move(lo), std::move(hi));
        }
        {
            Real lo(prec), hi(prec);
            mpfr_sub(lo.get(), pts.front().lo.get(), pts.back().hi.get(), MPFR_RNDD);
            mpfr_add_si(lo.get(), lo.get(), 1, MPFR_RNDD);
            mpfr_sub(hi.get(), pts.front().hi.get(), pts.back().lo.get(), MPFR_RNDU);
            mpfr_add_si(hi.get(), hi.get(), 1, MPFR_RNDU);
            gaps.emplace_back(std::move(lo), std::move(hi));
        }

        // Cluster overlapping enclosures; distinct clusters certify distinct
        // true gap lengths, so the three-distance theorem caps them at 3.
        std::sort(gaps.begin(), gaps.end(), [](const Interval& a, const Interval& b) {
            return mpfr_cmp(a.lo().get(), b.lo().get()) < 0;
        });
        std::vector<GapValue> clusters;
        for (const auto& g : gaps) {
            if (!clusters.empty() &&
                mpfr_cmp(g.lo().get(), clusters.back().value.hi().get()) <= 0) {
                clusters.back().value = Interval::hull(clusters.back().value, g);
                clusters.back().multiplicity++;
            } else {
                clusters.emplace_back(g, 1);
            }
        }
        if (clusters.size() > 3) {
            if (round >= policy.max_refinements) {
                throw PrecisionError("more than 3 gap clusters at max precision");
            }
            continue;
        }

        GapReport report;
        report.requested_n = N;
        report.points = pts.size();
        report.max_gap = clusters.back().value;
        report.distinct = std::move(clusters);
        return report;
    }
}

std::complex<double> moebius(std::complex<double> a, std::complex<double> z) {
    if (std::abs(a) >= 1.0) throw DomainError("moebius parameter requires |a| < 1");
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("moebius argument requires |z| <= 1");
    return (a - z) / (1.0 - std::conj(a) * z);
}

}  // namespace rotospec

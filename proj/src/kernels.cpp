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
#include "rotospec/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rotospec::kernels {

namespace {

long worker_count() {
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

struct ChunkError {
    long index = 0;  // first n that failed; 0 = clean
    std::string message;
};

// Exceptions must not cross an OpenMP region; each chunk records its first
// failure instead and the merge rethrows the earliest one.
template <typename Fn>
void run_chunked(long N, long chunks, Fn&& body) {
    long chunk = (N + chunks - 1) / chunks;
#ifdef _OPENMP
#pragma omp parallel for schedule(static, 1)
#endif
    for (long t = 0; t < chunks; ++t) {
        long lo = 1 + t * chunk;
        long hi = std::min(N, lo + chunk - 1);
        if (lo <= hi) body(t, lo, hi);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// divisor scan
// ---------------------------------------------------------------------------

namespace {

std::vector<DivisorSample> divisor_scan_impl(const RotationNumber& x, const Rational& y, long N,
                                             const PrecisionPolicy& policy, long chunks) {
    if (N < 1) throw DomainError("divisor scan horizon must be >= 1");
    std::vector<DivisorSample> out(static_cast<std::size_t>(N));
    std::vector<ChunkError> errors(static_cast<std::size_t>(chunks));
    run_chunked(N, chunks, [&](long t, long lo, long hi) {
        for (long n = lo; n <= hi; ++n) {
            try {
                out[static_cast<std::size_t>(n - 1)] =
                    DivisorSample{n, small_divisor(x, BigInt(n), y, policy)};
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(t)] = ChunkError{n, e.what()};
                break;
            }
        }
    });
    for (const auto& err : errors) {
        if (err.index != 0) throw PrecisionError(err.message);
    }
    return out;
}

}  // namespace

std::vector<DivisorSample> divisor_scan_serial(const RotationNumber& x, const Rational& y, long N,
                                               const PrecisionPolicy& policy) {
    return divisor_scan_impl(x, y, N, policy, 1);
}

std::vector<DivisorSample> divisor_scan_parallel(const RotationNumber& x, const Rational& y,
                                                 long N, const PrecisionPolicy& policy) {
    return divisor_scan_impl(x, y, N, policy, worker_count());
}

// ---------------------------------------------------------------------------
// criterion term scan
// ---------------------------------------------------------------------------

namespace {

struct TermPartial {
    Real max_lo;
    Real max_hi;
    long argmax_n = 0;
    long first_blowup_n = 0;
    LogMagnitude blowup_term = LogMagnitude::zero();
    long eigen_n = 0;
    ChunkError error;
    bool touched = false;

    explicit TermPartial(mpfr_prec_t prec) : max_lo(prec), max_hi(prec) {
        mpfr_set_inf(max_lo.get(), -1);
        mpfr_set_inf(max_hi.get(), -1);
    }
};

void scan_terms(const RotationNumber& x, const Rational& y, const LogMagnitude& log2_rho, long lo,
                long hi, long blowup_log2, const PrecisionPolicy& policy, TermPartial& out) {
    for (long n = lo; n <= hi; ++n) {
        try {
            DistanceEnclosure d = multiple_distance(x, BigInt(n), y, policy);
            if (d.exact_zero) {
                out.eigen_n = n;
                return;
            }
            DivisorEnclosure div = divisor_from_distance(d, policy.initial_bits);
            if (!div.log2 || div.log2->is_zero()) {
                out.error = ChunkError{n, "insufficient precision: cannot certify divisor at n=" +
                                              std::to_string(n)};
                return;
            }
            LogMagnitude term = log2_rho.pow(BigInt(n)).div(*div.log2);
            out.touched = true;
            if (mpfr_cmp(term.lo().get(), out.max_lo.get()) > 0) {
                mpfr_set(out.max_lo.get(), term.lo().get(), MPFR_RNDD);
            }
            if (mpfr_cmp(term.hi().get(), out.max_hi.get()) > 0) {
                mpfr_set(out.max_hi.get(), term.hi().get(), MPFR_RNDU);
                out.argmax_n = n;
            }
            if (out.first_blowup_n == 0 && term.geq_log2(blowup_log2) == std::optional<bool>(true)) {
                out.first_blowup_n = n;
                out.blowup_term = term;
            }
        } catch (const std::exception& e) {
            out.error = ChunkError{n, e.what()};
            return;
        }
    }
}

TermScanResult criterion_term_scan_impl(const RotationNumber& x, const Rational& y,
                                        const Rational& rho, long N, long blowup_log2,
                                        const PrecisionPolicy& policy, long chunks) {
    if (N < 1) throw DomainError("criterion horizon must be >= 1");
    if (sgn(rho) <= 0 || rho >= 1) throw DomainError("alpha/beta ratio must lie in (0, 1)");
    mpfr_prec_t prec = policy.initial_bits;
    LogMagnitude log2_rho = LogMagnitude::of_rational(rho, prec);

    std::vector<TermPartial> partials;
    partials.reserve(static_cast<std::size_t>(chunks));
    for (long t = 0; t < chunks; ++t) partials.emplace_back(prec);

    run_chunked(N, chunks, [&](long t, long lo, long hi) {
        scan_terms(x, y, log2_rho, lo, hi, blowup_log2, policy,
                   partials[static_cast<std::size_t>(t)]);
    });

    // Merge in index order; a chunk that stopped on an event truncates the
    // scan exactly where the serial loop would have stopped.
    TermScanResult res;
    res.sup_log2_lo = Real(prec);
    res.sup_log2_hi = Real(prec);
    mpfr_set_inf(res.sup_log2_lo.get(), -1);
    mpfr_set_inf(res.sup_log2_hi.get(), -1);
    for (const auto& part : partials) {
        if (part.touched) {
            if (mpfr_cmp(part.max_lo.get(), res.sup_log2_lo.get()) > 0) {
                mpfr_set(res.sup_log2_lo.get(), part.max_lo.get(), MPFR_RNDD);
            }
            if (mpfr_cmp(part.max_hi.get(), res.sup_log2_hi.get()) > 0) {
                mpfr_set(res.sup_log2_hi.get(), part.max_hi.get(), MPFR_RNDU);
                res.argmax_n = part.argmax_n;
            }
            if (res.first_blowup_n == 0 && part.first_blowup_n != 0) {
                res.first_blowup_n = part.first_blowup_n;
                res.blowup_term = part.blowup_term;
            }
        }
        if (part.eigen_n != 0) {
            res.eigen_collision_n = part.eigen_n;
            return res;
        }
        if (part.error.index != 0) throw PrecisionError(part.error.message);
    }
    return res;
}

}  // namespace

TermScanResult criterion_term_scan_serial(const RotationNumber& x, const Rational& y,
                                          const Rational& rho, long N, long blowup_log2,
                                          const PrecisionPolicy& policy) {
    return criterion_term_scan_impl(x, y, rho, N, blowup_log2, policy, 1);
}

TermScanResult criterion_term_scan_parallel(const RotationNumber& x, const Rational& y,
                                            const Rational& rho, long N, long blowup_log2,
                                            const PrecisionPolicy& policy) {
    return criterion_term_scan_impl(x, y, rho, N, blowup_log2, policy, worker_count());
}

// ---------------------------------------------------------------------------
// orbit points
// ---------------------------------------------------------------------------

OrbitPoint frac_point(const RotationNumber& x, long n, mpfr_prec_t prec) {
    switch (x.kind()) {
        case RotationNumber::Kind::Rational: {
            Rational v = frac_part(Rational(n) * x.rational_value());
            Interval e = Interval::point_rational(v, prec);
            return OrbitPoint(e.lo(), e.hi());
        }
        case RotationNumber::Kind::Surd: {
            QuadraticSurd t = x.surd_value().scale_sub(BigInt(n), Rational(0));
            BigInt fl = t.floor();
            QuadraticSurd f = (sgn(fl) != 0) ? t.sub_int(fl) : t;
            Interval e = f.enclosure(prec);
            return OrbitPoint(e.lo(), e.hi());
        }
        case RotationNumber::Kind::Liouville: {
            const auto& lv = x.liouville_levels();
            long J = lv.depth();
            Rational base = frac_part(Rational(n) * lv.partial[J - 1]);
            Rational hi = base + Rational(n) * lv.tail_upper(J);
            if (hi >= 1) {
                throw PrecisionError("orbit point enclosure straddles the wrap at n=" +
                                     std::to_string(n));
            }
            Interval e = Interval::of_rational_bounds(base, hi, prec);
            return OrbitPoint(e.lo(), e.hi());
        }
        case RotationNumber::Kind::Ball:
        default: {
            const auto& b = x.ball_value();
            Rational c = b.center.to_rational();
            Rational r = b.radius.to_rational();
            Rational lo = Rational(n) * (c - r);
            Rational hi = Rational(n) * (c + r);
            BigInt fl;
            mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
            Rational flo = lo - Rational(fl);
            Rational fhi = hi - Rational(fl);
            if (fhi >= 1) {
                throw PrecisionError("ball orbit point straddles the wrap at n=" +
                                     std::to_string(n));
            }
            Interval e = Interval::of_rational_bounds(flo, fhi, prec);
            return OrbitPoint(e.lo(), e.hi());
        }
    }
}

namespace {

std::vector<OrbitPoint> orbit_points_impl(const RotationNumber& x, long N, mpfr_prec_t prec,
                                          long chunks) {
    if (N < 1) throw DomainError("orbit horizon must be >= 1");
    std::vector<OrbitPoint> out(static_cast<std::size_t>(N));
    std::vector<ChunkError> errors(static_cast<std::size_t>(chunks));
    run_chunked(N, chunks, [&](long t, long lo, long hi) {
        for (long n = lo; n <= hi; ++n) {
            try {
                out[static_cast<std::size_t>(n - 1)] = frac_point(x, n, prec);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(t)] = ChunkError{n, e.what()};
                break;
            }
        }
    });
    for (const auto& err : errors) {
        if (err.index != 0) throw PrecisionError(err.message);
    }
    return out;
}

}  // namespace

std::vector<OrbitPoint> orbit_points_serial(const RotationNumber& x, long N, mpfr_prec_t prec) {
    return orbit_points_impl(x, N, prec, 1);
}

std::vector<OrbitPoint> orbit_points_parallel(const RotationNumber& x, long N, mpfr_prec_t prec) {
    return orbit_points_impl(x, N, prec, worker_count());
}

}  // namespace rotospec::kernels

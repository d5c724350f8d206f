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
#ifndef ROTOSPEC_KERNELS_HPP
#define ROTOSPEC_KERNELS_HPP

#include <vector>

#include "rotospec/arith.hpp"
#include "rotospec/rotation.hpp"
#include "rotospec/rotation_number.hpp"

// Data-parallel inner loops. Each kernel has a serial reference
// implementation and an OpenMP version; both are element-wise
// deterministic and must produce identical results (tested), so callers
// may pick either freely. Reductions are done serially afterwards to keep
// outputs independent of the thread schedule.

namespace rotospec::kernels {

// --- divisor scan -----------------------------------------------------------

std::vector<DivisorSample> divisor_scan_serial(const RotationNumber& x, const Rational& y, long N,
                                               const PrecisionPolicy& policy);
std::vector<DivisorSample> divisor_scan_parallel(const RotationNumber& x, const Rational& y,
                                                 long N, const PrecisionPolicy& policy);

// --- criterion term scan ----------------------------------------------------

// log2 bounds of rho^n / |r^n - lambda| for n = 1..N, rho = alpha/beta.
struct TermScanResult {
    // Enclosure of sup_n term_n: [max_n lo_n, max_n hi_n] in log2 domain.
    Real sup_log2_lo;
    Real sup_log2_hi;
    long argmax_n = 0;            // first n attaining max_n hi_n
    long first_blowup_n = 0;      // first n with certified term >= 2^blowup_log2 (0 = none)
    LogMagnitude blowup_term = LogMagnitude::zero();
    long eigen_collision_n = 0;   // first exact-zero divisor (0 = none)

    TermScanResult() : sup_log2_lo(64), sup_log2_hi(64) {}
};

TermScanResult criterion_term_scan_serial(const RotationNumber& x, const Rational& y,
                                          const Rational& rho, long N, long blowup_log2,
                                          const PrecisionPolicy& policy);
TermScanResult criterion_term_scan_parallel(const RotationNumber& x, const Rational& y,
                                            const Rational& rho, long N, long blowup_log2,
                                            const PrecisionPolicy& policy);

// --- orbit points -----------------------------------------------------------

// frac(n*x) for n = 1..N as outward-rounded endpoint pairs.
struct OrbitPoint {
    Real lo;
    Real hi;
    OrbitPoint() : lo(MPFR_PREC_MIN), hi(MPFR_PREC_MIN) {}
    OrbitPoint(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}
};

// Single point frac(n*x); building block of the scans above.
OrbitPoint frac_point(const RotationNumber& x, long n, mpfr_prec_t prec);

std::vector<OrbitPoint> orbit_points_serial(const RotationNumber& x, long N, mpfr_prec_t prec);
std::vector<OrbitPoint> orbit_points_parallel(const RotationNumber& x, long N, mpfr_prec_t prec);

}  // namespace rotospec::kernels

#endif  // ROTOSPEC_KERNELS_HPP

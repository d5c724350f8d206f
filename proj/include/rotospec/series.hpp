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
#ifndef ROTOSPEC_SERIES_HPP
#define ROTOSPEC_SERIES_HPP

#include <string>
#include <variant>
#include <vector>

#include "rotospec/rotation.hpp"
#include "rotospec/rotation_number.hpp"
#include "rotospec/spectrum.hpp"

namespace rotospec {

struct ComplexRational {
    Rational re, im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    Rational abs_squared() const {
        Rational s = re * re + im * im;
        s.canonicalize();
        return s;
    }
};

// Power-series coefficients (a_n), n >= 1 for H0 semantics (n >= 0 under H).
class CoefficientStream {
  public:
    struct Ones {};
    struct Geometric {
        Rational ratio;  // a_n = ratio^n
    };
    struct Finite {
        std::vector<std::pair<long, ComplexRational>> terms;  // sparse, sorted by n
    };
    struct Tabulated {
        std::vector<ComplexRational> values;  // values[i] = a_{i+1}
    };

    static CoefficientStream ones() { return CoefficientStream(Ones{}); }
    static CoefficientStream geometric(Rational ratio);
    static CoefficientStream finite(std::vector<std::pair<long, ComplexRational>> terms);
    static CoefficientStream tabulated(std::vector<ComplexRational> values);

    ComplexRational at(long n) const;  // exact coefficient, n >= 1
    std::string descriptor() const;
    static CoefficientStream parse(const std::string& descriptor);

    // decreasing-tail certificate: |a_{n+1}/a_n| <= ratio_bound eventually
    std::optional<Rational> ratio_bound() const;

  private:
    template <typename T>
    explicit CoefficientStream(T v) : v_(std::move(v)) {}
    std::variant<Ones, Geometric, Finite, Tabulated> v_;
};

struct SeminormResult {
    Interval value;  // sup_{1<=n<=N} |a_n| alpha^n
    long argmax_n = 0;
    std::string tail_note;

    SeminormResult() : value(Interval::of_long(0, 64)) {}
};

// P_alpha at a finite horizon, with a tail certificate when the stream's
// coefficient ratio makes the terms eventually decreasing.
SeminormResult seminorm(const CoefficientStream& f, const Rational& alpha, long N,
                        const PrecisionPolicy& policy = {});

struct TransformedEntry {
    long n = 0;
    ComplexRational a;
    DivisorEnclosure divisor;
    LogMagnitude b_log2;                    // |b_n| = |a_n| / |r^n - lambda|
    std::optional<ComplexRational> b_exact; // exact value when r^n and lambda are rational-real
    bool a_zero = false;
};

struct TransformedStream {
    std::vector<TransformedEntry> entries;
    std::optional<Interval> off_circle_delta;  // separation |1 - |lambda|| when off-circle
};

// Coefficientwise resolvent transform b_n = a_n / (r^n - lambda). Throws
// EigenCollision when a divisor vanishes at some index <= N.
TransformedStream resolvent_apply(const CoefficientStream& f, const RotationNumber& x,
                                  const LambdaPoint& lambda, long N,
                                  const PrecisionPolicy& policy = {});

// min over the window of |b_n|^(-1/n): a certified upper bound on the
// radius of convergence as witnessed by those coefficients alone.
Interval radius_window_estimate(const TransformedStream& t, const std::vector<long>& window,
                                const PrecisionPolicy& policy = {});

// CSV columns: n, re(a_n), im(a_n), divisor_log2_lo, divisor_log2_hi,
// b_n_log2_magnitude (certified lower bound).
std::string transformed_to_csv(const TransformedStream& t);

}  // namespace rotospec

#endif  // ROTOSPEC_SERIES_HPP

// SPDX-License-Identifier: Apache-2.0
//
// dbfrange: maximum communication range analysis for distributed transmit beamforming
// Copyright (C) 2026 The dbfrange Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "dbfrange/errors.hpp"

namespace dbfrange::special {

namespace detail {

inline constexpr int kMaxIterations = 10000;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// P(a, x) by its power series; converges quickly for x < a + 1.
inline double lower_gamma_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericFailure("lower incomplete gamma series did not converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); for x >= a + 1.
inline double upper_gamma_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
        }
    }
    throw NumericFailure("upper incomplete gamma continued fraction did not converge");
}

} // namespace detail

/// Regularized lower incomplete gamma function P(a, x) for a > 0.
inline double gamma_p(double a, double x)
{
    if (!(a > 0.0)) throw DomainError("gamma_p: shape must be > 0");
    if (!(x >= 0.0)) throw DomainError("gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return detail::lower_gamma_series(a, x);
    return 1.0 - detail::upper_gamma_fraction(a, x);
}

/// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x)
{
    if (!(a > 0.0)) throw DomainError("gamma_q: shape must be > 0");
    if (!(x >= 0.0)) throw DomainError("gamma_q: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - detail::lower_gamma_series(a, x);
    return detail::upper_gamma_fraction(a, x);
}

inline double gamma_pdf_unit_scale(double a, double x)
{
    if (x <= 0.0) return a == 1.0 && x == 0.0 ? 1.0 : 0.0;
    return std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a));
}

/// Inverse of P(a, .): the x with P(a, x) = p. Newton steps are kept inside a
/// shrinking bisection bracket; stops when |P(a, x) - p| <= prob_tol * min(p, 1 - p).
inline double gamma_p_inverse(double a, double p, double prob_tol = 1e-10)
{
    if (!(a > 0.0)) throw DomainError("gamma_p_inverse: shape must be > 0");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("gamma_p_inverse: p must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    double lo = 0.0;
    double hi = a + 1.0;
    while (gamma_p(a, hi) < p) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NumericFailure("gamma_p_inverse: cannot bracket quantile");
    }

    const double tol = prob_tol * std::min(p, 1.0 - p);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 500; ++it) {
        const double f = gamma_p(a, x) - p;
        if (std::abs(f) <= tol) return x;
        if (f < 0.0) lo = x;
        else hi = x;

        const double slope = gamma_pdf_unit_scale(a, x);
        double next = slope > 0.0 ? x - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4.0 * detail::kEps * hi) return next;
        x = next;
    }
    throw NumericFailure("gamma_p_inverse did not converge");
}

} // namespace dbfrange::special

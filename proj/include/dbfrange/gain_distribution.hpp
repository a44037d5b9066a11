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
#include <optional>

#include "dbfrange/errors.hpp"
#include "dbfrange/special_functions.hpp"

namespace dbfrange {

// Gamma approximation of the coherent combining gain: G = N - X with
// X ~ Gamma(shape, scale), clamped to [0, N]. When point_mass is set the
// distribution is degenerate at that value (N = 1, or zero phase error).
struct GainDistribution {
    int n_radios = 1;
    double phase_error_var = 0.0;
    double shape = 0.0;
    double scale = 0.0;
    std::optional<double> point_mass;

    bool degenerate() const { return point_mass.has_value(); }
    double mean() const { return point_mass ? *point_mass : n_radios - shape * scale; }
    double variance() const { return point_mass ? 0.0 : shape * scale * scale; }
};

inline GainDistribution gamma_params(int n_radios, double phase_error_var)
{
    if (n_radios < 1) throw DomainError("gamma_params: n_radios must be >= 1");
    if (!(phase_error_var >= 0.0)) throw DomainError("gamma_params: phase error variance must be >= 0");

    const double n = n_radios;
    const double coherence = std::exp(-phase_error_var);
    const double loss = -std::expm1(-phase_error_var); // 1 - e^{-s}, accurate for small s
    const double denom = loss * loss + 2.0 * n * coherence;

    GainDistribution dist;
    dist.n_radios = n_radios;
    dist.phase_error_var = phase_error_var;
    dist.shape = n * (n - 1.0) / denom;
    dist.scale = loss * denom / n;
    if (n_radios == 1) {
        dist.point_mass = 1.0;
    } else if (dist.scale == 0.0) {
        dist.point_mass = n;
    }
    return dist;
}

/// P(G <= g).
inline double gain_cdf(double g, const GainDistribution& dist)
{
    if (dist.point_mass) return g >= *dist.point_mass ? 1.0 : 0.0;
    const double n = dist.n_radios;
    if (g >= n) return 1.0;
    if (g < 0.0) return 0.0;
    // The clamp at 0 collects P(X >= N) into G = 0.
    return special::gamma_q(dist.shape, (n - g) / dist.scale);
}

inline double gain_quantile(double p, const GainDistribution& dist)
{
    if (!(p > 0.0 && p < 1.0)) throw DomainError("gain_quantile: p must lie in (0, 1)");
    if (dist.point_mass) return *dist.point_mass;
    const double n = dist.n_radios;
    // P(G <= g) = p  <=>  P(X < N - g) = 1 - p
    const double x = dist.scale * special::gamma_p_inverse(dist.shape, 1.0 - p);
    return std::clamp(n - x, 0.0, n);
}

/// Gain G_{1-p_min} that the combining gain meets or exceeds with probability p_min.
inline double guaranteed_gain(int n_radios, double phase_error_var, double p_min)
{
    if (!(p_min > 0.0 && p_min < 1.0)) throw DomainError("guaranteed_gain: p_min must lie in (0, 1)");
    return gain_quantile(1.0 - p_min, gamma_params(n_radios, phase_error_var));
}

} // namespace dbfrange

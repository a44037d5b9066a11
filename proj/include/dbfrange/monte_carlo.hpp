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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dbfrange/errors.hpp"
#include "dbfrange/gain_distribution.hpp"
#include "dbfrange/parallel.hpp"
#include "dbfrange/random.hpp"

namespace dbfrange {

// Draws per random stream; fixed so that results do not depend on thread count.
inline constexpr std::size_t kMonteCarloChunk = 1u << 16;

struct GainSampleSet {
    int n_radios = 1;
    double phase_error_var = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> samples; // in draw order
};

/// One draw of G = |sum_n exp(j phi_n)|^2 / N with phi_n ~ N(0, var) i.i.d.
inline double sample_gain(int n_radios, double phase_error_var, Rng& rng)
{
    if (phase_error_var == 0.0 || n_radios == 1) return n_radios;
    const double sd = std::sqrt(phase_error_var);
    double re = 0.0, im = 0.0;
    for (int n = 0; n < n_radios; ++n) {
        const double phi = sd * rng.normal();
        re += std::cos(phi);
        im += std::sin(phi);
    }
    const double g = (re * re + im * im) / n_radios;
    return std::clamp(g, 0.0, static_cast<double>(n_radios));
}

inline GainSampleSet sample_gains(int n_radios, double phase_error_var, std::size_t n_samples, std::uint64_t seed,
                                  unsigned threads = 1)
{
    if (n_radios < 1) throw DomainError("sample_gains: n_radios must be >= 1");
    if (!(phase_error_var >= 0.0)) throw DomainError("sample_gains: phase error variance must be >= 0");

    GainSampleSet set{n_radios, phase_error_var, seed, std::vector<double>(n_samples)};
    const std::size_t chunks = (n_samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        Rng rng(seed, c);
        const std::size_t end = std::min(n_samples, (c + 1) * kMonteCarloChunk);
        for (std::size_t i = c * kMonteCarloChunk; i < end; ++i)
            set.samples[i] = sample_gain(n_radios, phase_error_var, rng);
    });
    return set;
}

/// Order-statistic quantile with linear interpolation between neighbours
/// (position (n - 1) * p in the sorted samples).
inline double empirical_quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty()) throw std::invalid_argument("empirical_quantile: empty sample set");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("empirical_quantile: p must lie in [0, 1]");
    const double h = (sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

inline std::vector<double> sorted_samples(const GainSampleSet& set)
{
    std::vector<double> s = set.samples;
    std::sort(s.begin(), s.end());
    return s;
}

inline double empirical_quantile(const GainSampleSet& set, double p)
{
    return empirical_quantile(sorted_samples(set), p);
}

// Fraction of sorted samples <= g.
inline double empirical_cdf(std::span<const double> sorted, double g)
{
    if (sorted.empty()) throw std::invalid_argument("empirical_cdf: empty sample set");
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), g);
    return static_cast<double>(it - sorted.begin()) / sorted.size();
}

/// Kolmogorov-Smirnov distance between the sorted samples and the analytic CDF.
inline double ks_distance(std::span<const double> sorted, const GainDistribution& dist)
{
    if (sorted.empty()) throw std::invalid_argument("ks_distance: empty sample set");
    const double n = sorted.size();
    double worst = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        // Step over ties so the ECDF jump is evaluated once per distinct value.
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double x = sorted[i];
        const double f = gain_cdf(x, dist);
        // Left limit F(x-): continuous on (0, N], jumps at 0 (the clamp) and at a point mass.
        const double f_left = dist.point_mass ? (x > *dist.point_mass ? 1.0 : 0.0) : (x > 0.0 ? f : 0.0);
        worst = std::max({worst, std::abs((j + 1) / n - f), std::abs(f_left - i / n)});
        i = j + 1;
    }
    return worst;
}

/// Fraction of draws with N * G * snr_prebf < snr_req.
inline double empirical_outage(int n_radios, double phase_error_var, double snr_prebf, double snr_req,
                               std::size_t n_samples, std::uint64_t seed, unsigned threads = 1)
{
    if (n_samples < 1) throw DomainError("empirical_outage: need at least one sample");
    const auto set = sample_gains(n_radios, phase_error_var, n_samples, seed, threads);
    std::size_t outages = 0;
    for (double g : set.samples)
        if (n_radios * g * snr_prebf < snr_req) ++outages;
    return static_cast<double>(outages) / n_samples;
}

} // namespace dbfrange

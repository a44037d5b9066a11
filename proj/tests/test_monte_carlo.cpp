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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dbfrange/monte_carlo.hpp"

using namespace dbfrange;
using Catch::Approx;

TEST_CASE("coherent and single-radio draws are exact", "[monte_carlo]")
{
    for (double g : sample_gains(5, 0.0, 1000, 1).samples) CHECK(g == Approx(5.0).epsilon(1e-14));
    for (double g : sample_gains(1, 0.9, 1000, 1).samples) CHECK(g == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-radio mean matches 1 + e^-var", "[monte_carlo]")
{
    const double s = 0.4;
    const auto set = sample_gains(2, s, 100000, 3);
    double sum = 0.0, sq = 0.0;
    for (double g : set.samples) {
        sum += g;
        sq += g * g;
    }
    const double n = set.samples.size();
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::abs(mean - (1.0 + std::exp(-s))) < 3 * se);
}

TEST_CASE("draws stay inside [0, N]", "[monte_carlo]")
{
    for (double g : sample_gains(7, 2.0, 20000, 9).samples) {
        CHECK(g >= 0.0);
        CHECK(g <= 7.0 + 1e-12);
    }
}

TEST_CASE("draws depend on the seed only", "[monte_carlo]")
{
    const auto a = sample_gains(6, 0.1, 150000, 42, 1);
    const auto b = sample_gains(6, 0.1, 150000, 42, 1);
    const auto c = sample_gains(6, 0.1, 150000, 42, 4);
    const auto d = sample_gains(6, 0.1, 150000, 43, 1);
    CHECK(a.samples == b.samples);
    CHECK(a.samples == c.samples);
    CHECK(a.samples != d.samples);
    // a prefix reproduces the leading draws
    const auto head = sample_gains(6, 0.1, 1000, 42, 3);
    CHECK(std::equal(head.samples.begin(), head.samples.end(), a.samples.begin()));
}

TEST_CASE("empirical quantile and cdf", "[monte_carlo]")
{
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(empirical_quantile(v, 0.5) == 2.0);
    CHECK(empirical_quantile(v, 0.0) == 1.0);
    CHECK(empirical_quantile(v, 1.0) == 3.0);
    CHECK(empirical_quantile(v, 0.25) == Approx(1.5));
    CHECK(empirical_cdf(v, 0.5) == 0.0);
    CHECK(empirical_cdf(v, 2.0) == Approx(2.0 / 3));
    CHECK(empirical_cdf(v, 9.0) == 1.0);
}

TEST_CASE("ks distance of the point mass sample", "[monte_carlo]")
{
    const auto d = gamma_params(4, 0.0);
    const std::vector<double> v(10, 4.0);
    CHECK(ks_distance(v, d) == 0.0);
}

TEST_CASE("empirical outage edge cases", "[monte_carlo]")
{
    CHECK(empirical_outage(4, 0.1, 1.0, 0.0, 1000, 1) == 0.0);
    CHECK(empirical_outage(4, 0.1, 1.0, 17.0, 1000, 1) == 1.0);
    CHECK(empirical_outage(4, 0.0, 1.0, 16.0, 1000, 1) == 0.0);
    CHECK_THROWS_AS(empirical_outage(4, 0.1, 1.0, 1.0, 0, 1), DomainError);
}

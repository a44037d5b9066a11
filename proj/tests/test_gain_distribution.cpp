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

#include "dbfrange/gain_distribution.hpp"
#include "dbfrange/monte_carlo.hpp"

using namespace dbfrange;
using Catch::Approx;

TEST_CASE("gamma parameters at N = 6, var = 0.1", "[gain_distribution]")
{
    const auto d = gamma_params(6, 0.1);
    CHECK(d.shape == Approx(2.7606248567354302575).epsilon(1e-13));
    CHECK(d.scale == Approx(0.17235696065668026073).epsilon(1e-13));
    CHECK_FALSE(d.point_mass.has_value());
}

TEST_CASE("mean matches the exact coherent mean", "[gain_distribution]")
{
    for (int n : {2, 3, 6, 16, 64}) {
        for (double s : {1e-4, 0.01, 0.1, 0.5, 1.0, 3.0}) {
            const auto d = gamma_params(n, s);
            CHECK(d.mean() == Approx(1.0 + (n - 1) * std::exp(-s)).epsilon(1e-12));
            CHECK(n - d.shape * d.scale == Approx(d.mean()).epsilon(1e-12));
            CHECK(d.variance() == Approx(d.shape * d.scale * d.scale).epsilon(1e-12));
        }
    }
}

TEST_CASE("degenerate cases are point masses", "[gain_distribution]")
{
    const auto one = gamma_params(1, 0.7);
    REQUIRE(one.point_mass.has_value());
    CHECK(*one.point_mass == 1.0);
    CHECK(gain_quantile(0.1, one) == 1.0);
    CHECK(gain_cdf(0.999, one) == 0.0);
    CHECK(gain_cdf(1.0, one) == 1.0);

    const auto coherent = gamma_params(8, 0.0);
    REQUIRE(coherent.point_mass.has_value());
    CHECK(*coherent.point_mass == 8.0);
    CHECK(guaranteed_gain(8, 0.0, 0.9) == 8.0);

    CHECK_THROWS_AS(gamma_params(0, 0.1), DomainError);
    CHECK_THROWS_AS(gamma_params(4, -0.1), DomainError);
}

TEST_CASE("cdf support and quantile round trip", "[gain_distribution]")
{
    const auto d = gamma_params(6, 0.3);
    CHECK(gain_cdf(-0.5, d) == 0.0);
    CHECK(gain_cdf(6.0, d) == 1.0);
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        const double g = gain_quantile(p, d);
        CHECK(g >= 0.0);
        CHECK(g <= 6.0);
        CHECK(gain_cdf(g, d) == Approx(p).margin(1e-9));
    }
    double prev = 0.0;
    for (double g = 0.0; g <= 6.0; g += 0.1) {
        const double c = gain_cdf(g, d);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("analytic model tracks Monte-Carlo at N = 6, var = 0.1", "[gain_distribution]")
{
    const auto d = gamma_params(6, 0.1);
    const auto set = sample_gains(6, 0.1, 200000, 7, 2);
    const auto sorted = sorted_samples(set);
    double mean = 0.0;
    for (double g : set.samples) mean += g;
    mean /= set.samples.size();
    CHECK(mean == Approx(d.mean()).epsilon(0.01));
    CHECK(std::abs(empirical_cdf(sorted, 5.0) - gain_cdf(5.0, d)) < 0.01);
    CHECK(std::abs(empirical_quantile(sorted, 0.1) - gain_quantile(0.1, d)) < 0.02 * 6);
}

TEST_CASE("guaranteed gain decreases with phase noise and with p_min", "[gain_distribution]")
{
    double prev = 6.0;
    for (double s : {0.01, 0.05, 0.1, 0.3, 0.8, 2.0}) {
        const double g = guaranteed_gain(6, s, 0.9);
        CHECK(g < prev);
        prev = g;
    }
    prev = 6.0;
    for (double p : {0.5, 0.8, 0.9, 0.99, 0.999}) {
        const double g = guaranteed_gain(6, 0.1, p);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_THROWS_AS(guaranteed_gain(6, 0.1, 1.0), DomainError);
}

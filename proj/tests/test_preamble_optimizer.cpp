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
#include <limits>
#include <random>
#include <vector>

#include "dbfrange/link_budget.hpp"
#include "dbfrange/preamble_optimizer.hpp"

using namespace dbfrange;

namespace {

// Reference: scan the whole lattice without the feasibility-set iterator or
// the optimizer's N_fb shortcut. Strict < keeps the lexicographically first
// minimum.
PreambleAllocation brute_force(const ProtocolConfig& cfg, double pre, double dr)
{
    PreambleAllocation best;
    best.achieved_variance = std::numeric_limits<double>::infinity();
    const long cap = cfg.overhead_budget;
    for (int zc = 2; zc * static_cast<long>(cfg.zc_length) <= cap; ++zc) {
        for (int ph = 1; ph <= cap; ++ph) {
            if (overhead_samples(cfg, {zc, ph, 1}) > cap) break;
            for (int fb = 1; fb <= cap; ++fb) {
                const PreambleLengths p{zc, ph, fb};
                if (overhead_samples(cfg, p) > cap) break;
                const double v = combining_phase_variance(cfg, p, pre, dr).combining_var;
                if (v < best.achieved_variance) {
                    best.lengths = p;
                    best.achieved_variance = v;
                }
            }
        }
    }
    best.overhead_used = overhead_samples(cfg, best.lengths);
    return best;
}

ProtocolConfig tiny_config()
{
    ProtocolConfig cfg;
    cfg.n_radios = 1;
    cfg.zc_length = 1;
    cfg.guard1 = cfg.guard2 = cfg.guard3 = 0;
    cfg.overhead_budget = 5;
    return cfg;
}

} // namespace

TEST_CASE("hand-enumerated feasible set", "[preamble_optimizer]")
{
    const auto triples = enumerate_feasible(tiny_config());
    std::vector<PreambleLengths> seen(triples.begin(), triples.end());
    const std::vector<PreambleLengths> expected{{2, 1, 1}, {2, 1, 2}, {2, 2, 1}, {3, 1, 1}};
    CHECK(seen == expected);
    CHECK(triples.count() == 4);
}

TEST_CASE("budget below the minimum has no feasible triples", "[preamble_optimizer]")
{
    ProtocolConfig cfg;
    cfg.overhead_budget = minimal_overhead(cfg) - 1;
    const auto triples = enumerate_feasible(cfg);
    CHECK(triples.begin() == triples.end());
    CHECK(triples.count() == 0);
    CHECK_THROWS_AS(optimize_preambles(cfg, 1.0, 31.6), InfeasibleError);
    try {
        optimize_preambles(cfg, 1.0, 31.6);
    } catch (const InfeasibleError& e) {
        CHECK(e.minimal_budget() == minimal_overhead(cfg));
    }
}

TEST_CASE("feasible count matches iteration and shrinks with N", "[preamble_optimizer]")
{
    ProtocolConfig cfg;
    cfg.overhead_budget = 600;
    long long prev = std::numeric_limits<long long>::max();
    for (int n = 1; n <= 12; ++n) {
        cfg.n_radios = n;
        const auto triples = enumerate_feasible(cfg);
        long long iterated = 0;
        for (const auto& p : triples) {
            REQUIRE(overhead_samples(cfg, p) <= cfg.overhead_budget);
            ++iterated;
        }
        CHECK(iterated == triples.count());
        CHECK(triples.count() <= prev);
        prev = triples.count();
    }
}

TEST_CASE("budget equal to the minimum admits only (2, 1, 1)", "[preamble_optimizer]")
{
    ProtocolConfig cfg;
    cfg.overhead_budget = minimal_overhead(cfg);
    const auto a = optimize_preambles(cfg, 1.0, 31.6);
    CHECK(a.lengths == PreambleLengths{2, 1, 1});
    CHECK(a.overhead_used == cfg.overhead_budget);
}

TEST_CASE("optimizer equals brute force at the default operating point", "[preamble_optimizer]")
{
    ProtocolConfig cfg; // N = 6, L = 1000, M = 64, T_s = 1 us, q = 1
    LinkBudget link;    // delta P = 15 dB
    const double pre = 1.0;
    const double dr = downlink_snr(pre, link);
    const auto opt = optimize_preambles(cfg, pre, dr);
    const auto ref = brute_force(cfg, pre, dr);
    CHECK(opt.lengths == ref.lengths);
    CHECK(opt.achieved_variance == ref.achieved_variance);
    CHECK(opt.overhead_used <= cfg.overhead_budget);
    CHECK(opt.achieved_variance == combining_phase_variance(cfg, opt.lengths, pre, dr).combining_var);
}

TEST_CASE("optimizer equals brute force on random instances", "[preamble_optimizer]")
{
    std::mt19937_64 rng(20261014);
    std::uniform_int_distribution<int> radios(1, 16), budget(40, 900), zc(4, 64), guard(0, 12);
    std::uniform_real_distribution<double> snr_db(-15.0, 20.0), delta(0.0, 25.0);
    int checked = 0;
    while (checked < 30) {
        ProtocolConfig cfg;
        cfg.n_radios = radios(rng);
        cfg.overhead_budget = budget(rng);
        cfg.zc_length = zc(rng);
        cfg.guard1 = guard(rng);
        cfg.guard2 = guard(rng);
        cfg.guard3 = guard(rng);
        cfg.count_both_feedback_preambles = (checked % 3 == 0);
        if (cfg.overhead_budget < minimal_overhead(cfg)) continue;
        const double pre = std::pow(10.0, snr_db(rng) / 10);
        const double dr = pre * std::pow(10.0, delta(rng) / 10);
        const auto opt = optimize_preambles(cfg, pre, dr);
        const auto ref = brute_force(cfg, pre, dr);
        INFO("N=" << cfg.n_radios << " L=" << cfg.overhead_budget << " M=" << cfg.zc_length);
        CHECK(opt.lengths == ref.lengths);
        CHECK(opt.achieved_variance == ref.achieved_variance);
        ++checked;
    }
}

TEST_CASE("optimum is first-order optimal on the integer lattice", "[preamble_optimizer]")
{
    ProtocolConfig cfg;
    for (double pre_db : {-10.0, 0.0, 10.0}) {
        const double pre = std::pow(10.0, pre_db / 10);
        const double dr = pre * std::pow(10.0, 1.5);
        const auto a = optimize_preambles(cfg, pre, dr);
        const auto& p = a.lengths;
        for (PreambleLengths step : {PreambleLengths{p.zc_repeats + 1, p.phase_preamble, p.feedback_preamble},
                                     PreambleLengths{p.zc_repeats, p.phase_preamble + 1, p.feedback_preamble},
                                     PreambleLengths{p.zc_repeats, p.phase_preamble, p.feedback_preamble + 1}}) {
            const bool feasible = overhead_samples(cfg, step) <= cfg.overhead_budget;
            const bool improves = combining_phase_variance(cfg, step, pre, dr).combining_var < a.achieved_variance;
            CHECK_FALSE((feasible && improves));
        }
    }
}

TEST_CASE("more budget never hurts, more radios never help", "[preamble_optimizer]")
{
    ProtocolConfig cfg;
    const double pre = 0.5, dr = 0.5 * 31.6;
    double prev = std::numeric_limits<double>::infinity();
    for (long l = 200; l <= 2000; l += 150) {
        cfg.overhead_budget = l;
        const double v = optimize_preambles(cfg, pre, dr).achieved_variance;
        CHECK(v <= prev);
        prev = v;
    }

    cfg.overhead_budget = 1000;
    prev = 0.0;
    for (int n = 1; n <= 16; ++n) {
        cfg.n_radios = n;
        const double v = optimize_preambles(cfg, pre, dr).achieved_variance;
        CHECK(v >= prev);
        prev = v;
    }
}

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
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dbfrange/errors.hpp"
#include "dbfrange/gain_distribution.hpp"
#include "dbfrange/link_budget.hpp"
#include "dbfrange/parallel.hpp"
#include "dbfrange/preamble_optimizer.hpp"
#include "dbfrange/units.hpp"
#include "dbfrange/variance_models.hpp"

namespace dbfrange {

struct SnrGrid {
    double min_db = -30.0;
    double max_db = 30.0;
    double step_db = 0.25;

    std::vector<double> points() const
    {
        if (!(step_db > 0.0) || !(max_db >= min_db)) throw DomainError("SnrGrid: need step > 0 and max >= min");
        std::vector<double> out;
        const auto n = static_cast<std::size_t>(std::floor((max_db - min_db) / step_db + 1e-9)) + 1;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(min_db + i * step_db);
        return out;
    }
};

// Everything that defines one max-range instance.
struct RangeProblem {
    ProtocolConfig protocol;
    LinkBudget link;
    double required_snr_db = 5.0;
    double p_min = 0.9;
    SnrGrid grid;
    double refine_tol_db = 1e-4;
    unsigned threads = 1;
};

// Achievable gain at one pre-BF SNR. allocation is empty when the budget
// cannot fit the protocol, in which case the gain is 0.
struct GainPoint {
    double snr_db = 0.0;
    std::optional<PreambleAllocation> allocation;
    double guaranteed_gain = 0.0; // G_{1-p_min}, linear
    double achievable_total_gain_db = -std::numeric_limits<double>::infinity();
    double required_total_gain_db = 0.0;

    double margin_db() const { return achievable_total_gain_db - required_total_gain_db; }
    bool feasible() const { return margin_db() >= 0.0; }
};

struct GainCurve {
    std::vector<double> snr_grid_db;
    std::vector<double> achievable_total_gain_db;
    std::vector<double> required_total_gain_db;
    std::vector<std::optional<PreambleAllocation>> allocations;
    std::vector<double> guaranteed_gain;
};

struct RangeSolution {
    double min_feasible_snr_db = 0.0;
    double max_distance_m = 0.0;
    PreambleAllocation allocation_at_solution;
    double achieved_gain_at_solution = 0.0; // G_{1-p_min} at the solution, linear
    double ideal_distance_m = 0.0;
    bool at_grid_boundary = false; // the lowest grid point was already feasible
};

/// G_req = snr_req / (N * snr_prebf), all linear.
inline double required_gain(double snr_prebf, double snr_req, int n_radios)
{
    if (!(snr_prebf > 0.0) || !(snr_req > 0.0) || n_radios < 1)
        throw DomainError("required_gain: inputs must be positive");
    return snr_req / (n_radios * snr_prebf);
}

/// Full per-point chain: downlink SNR, preamble optimization, sigma_e^2,
/// outage-constrained gain.
inline GainPoint evaluate_gain_point(const RangeProblem& prob, double snr_db)
{
    const auto& cfg = prob.protocol;
    GainPoint pt;
    pt.snr_db = snr_db;
    // N * G_req = snr_req / snr_prebf; independent of N.
    pt.required_total_gain_db = prob.required_snr_db - snr_db;

    if (cfg.overhead_budget < minimal_overhead(cfg)) return pt;

    const double snr = db_to_linear(snr_db);
    pt.allocation = optimize_preambles(cfg, snr, downlink_snr(snr, prob.link));
    pt.guaranteed_gain = guaranteed_gain(cfg.n_radios, pt.allocation->achieved_variance, prob.p_min);
    pt.achievable_total_gain_db = linear_to_db(cfg.n_radios * pt.guaranteed_gain);
    return pt;
}

inline GainCurve gain_curve(const RangeProblem& prob, std::span<const double> grid_db)
{
    if (grid_db.empty()) throw DomainError("gain_curve: empty SNR grid");
    for (std::size_t i = 1; i < grid_db.size(); ++i)
        if (!(grid_db[i] > grid_db[i - 1])) throw DomainError("gain_curve: SNR grid must be strictly increasing");

    std::vector<GainPoint> points(grid_db.size());
    parallel_for(grid_db.size(), prob.threads, [&](std::size_t i) { points[i] = evaluate_gain_point(prob, grid_db[i]); });

    GainCurve curve;
    for (const auto& pt : points) {
        curve.snr_grid_db.push_back(pt.snr_db);
        curve.achievable_total_gain_db.push_back(pt.achievable_total_gain_db);
        curve.required_total_gain_db.push_back(pt.required_total_gain_db);
        curve.allocations.push_back(pt.allocation);
        curve.guaranteed_gain.push_back(pt.guaranteed_gain);
    }
    return curve;
}

inline GainCurve gain_curve(const RangeProblem& prob)
{
    const auto grid = prob.grid.points();
    return gain_curve(prob, grid);
}

namespace detail {

inline std::string format_db(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace detail

/// Smallest pre-BF SNR (dB) at which N * G_{1-p_min} >= N * G_req, together
/// with the evaluated point there. The first feasible grid point and its
/// infeasible neighbour bracket the crossing, which is then bisected with the
/// full chain until the bracket is narrower than prob.refine_tol_db.
inline GainPoint min_feasible_point(const RangeProblem& prob, const GainCurve& curve, bool* at_boundary = nullptr)
{
    const auto& grid = curve.snr_grid_db;
    if (grid.empty()) throw DomainError("min_feasible_snr: empty curve");

    std::size_t first = grid.size();
    double best_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double margin = curve.achievable_total_gain_db[i] - curve.required_total_gain_db[i];
        best_margin = std::max(best_margin, margin);
        if (margin >= 0.0 && first == grid.size()) first = i;
    }
    if (first == grid.size()) {
        throw NoFeasiblePoint("post-BF requirement unmet on the whole SNR grid; best margin " +
                                  detail::format_db(best_margin) + " dB",
                              best_margin);
    }
    if (at_boundary) *at_boundary = (first == 0);
    if (first == 0) return evaluate_gain_point(prob, grid.front());

    double lo = grid[first - 1];
    double hi = grid[first];

    // The margin must change sign exactly once inside the bracket.
    constexpr int probes = 8;
    bool seen_feasible = false;
    for (int k = 1; k < probes; ++k) {
        const double x = lo + (hi - lo) * k / probes;
        const bool ok = evaluate_gain_point(prob, x).feasible();
        if (seen_feasible && !ok) {
            throw NumericFailure("achievable-minus-required margin is not monotone between " + detail::format_db(lo) +
                                 " and " + detail::format_db(hi) + " dB");
        }
        seen_feasible = seen_feasible || ok;
    }

    GainPoint best = evaluate_gain_point(prob, hi);
    while (hi - lo > prob.refine_tol_db) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        GainPoint pt = evaluate_gain_point(prob, mid);
        if (pt.feasible()) {
            hi = mid;
            best = std::move(pt);
        } else {
            lo = mid;
        }
    }
    return best;
}

inline double min_feasible_snr(const RangeProblem& prob, const GainCurve& curve)
{
    return min_feasible_point(prob, curve).snr_db;
}

/// Distance if the full N^2 gain were realized.
inline double ideal_distance(const RangeProblem& prob)
{
    const double n = prob.protocol.n_radios;
    return distance_from_snr(db_to_linear(prob.required_snr_db) / (n * n), prob.link);
}

inline RangeSolution max_range(const RangeProblem& prob)
{
    validate(prob.protocol);
    validate(prob.link);
    if (!(prob.p_min > 0.0 && prob.p_min < 1.0)) throw DomainError("max_range: p_min must lie in (0, 1)");

    const GainCurve curve = gain_curve(prob);
    RangeSolution sol;
    const GainPoint pt = min_feasible_point(prob, curve, &sol.at_grid_boundary);
    sol.min_feasible_snr_db = pt.snr_db;
    sol.max_distance_m = distance_from_snr(db_to_linear(pt.snr_db), prob.link);
    sol.allocation_at_solution = *pt.allocation;
    sol.achieved_gain_at_solution = pt.guaranteed_gain;
    sol.ideal_distance_m = ideal_distance(prob);
    return sol;
}

struct SweepRow {
    int n_radios = 0;
    long overhead_budget = 0;
    double dest_power_delta_db = 0.0;
    double ideal_distance_m = 0.0;
    std::optional<RangeSolution> solution; // empty when no SNR meets the requirement
};

/// Cross product of the three lists, ordered N-major, then L, then delta P.
inline std::vector<SweepRow> sweep(const RangeProblem& base, std::span<const int> n_list,
                                   std::span<const long> budget_list, std::span<const double> delta_list)
{
    if (n_list.empty() || budget_list.empty() || delta_list.empty())
        throw DomainError("sweep: parameter lists must be nonempty");

    std::vector<SweepRow> rows;
    for (int n : n_list)
        for (long l : budget_list)
            for (double dp : delta_list) rows.push_back({n, l, dp, 0.0, std::nullopt});

    parallel_for(rows.size(), base.threads, [&](std::size_t i) {
        RangeProblem prob = base;
        prob.threads = 1;
        prob.protocol.n_radios = rows[i].n_radios;
        prob.protocol.overhead_budget = rows[i].overhead_budget;
        prob.link.dest_power_delta_db = rows[i].dest_power_delta_db;
        rows[i].ideal_distance_m = ideal_distance(prob);
        try {
            rows[i].solution = max_range(prob);
        } catch (const NoFeasiblePoint&) {
            rows[i].solution.reset();
        }
    });
    return rows;
}

} // namespace dbfrange

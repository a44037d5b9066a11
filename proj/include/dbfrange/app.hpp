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

#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dbfrange/config.hpp"
#include "dbfrange/csv.hpp"
#include "dbfrange/gain_distribution.hpp"
#include "dbfrange/monte_carlo.hpp"
#include "dbfrange/preamble_optimizer.hpp"
#include "dbfrange/range_solver.hpp"
#include "dbfrange/signal_sim.hpp"

// Subcommand implementations shared by the dbfrange CLI and the test suites.
// Each command writes its CSV files under cfg.output_dir and returns the
// one-line summary the CLI prints.
namespace dbfrange::app {

struct CommandResult {
    std::string summary;
    std::vector<std::filesystem::path> files;
};

namespace detail {

using csv::format_int;
using csv::format_real;

inline std::filesystem::path out_path(const RunConfig& cfg, const std::string& name)
{
    return std::filesystem::path(cfg.output_dir) / name;
}

inline std::vector<std::string> range_header()
{
    return {"n_radios",    "overhead_budget", "dest_power_delta_db", "min_feasible_snr_db", "max_distance_m",
            "ideal_distance_m", "n_zc", "n_ph", "n_fb", "combining_var", "guaranteed_gain", "at_grid_boundary"};
}

inline std::vector<std::string> range_cells(int n, long budget, double delta_db, double ideal_m,
                                            const std::optional<RangeSolution>& sol)
{
    std::vector<std::string> row{format_int(n), format_int(budget), format_real(delta_db)};
    if (!sol) {
        row.insert(row.end(), {"", "", format_real(ideal_m), "", "", "", "", "", ""});
        return row;
    }
    const auto& a = sol->allocation_at_solution;
    row.insert(row.end(), {format_real(sol->min_feasible_snr_db), format_real(sol->max_distance_m),
                           format_real(sol->ideal_distance_m), format_int(a.lengths.zc_repeats),
                           format_int(a.lengths.phase_preamble), format_int(a.lengths.feedback_preamble),
                           format_real(a.achieved_variance), format_real(sol->achieved_gain_at_solution),
                           sol->at_grid_boundary ? "1" : "0"});
    return row;
}

inline std::string triple(const PreambleLengths& p)
{
    return "(" + std::to_string(p.zc_repeats) + ", " + std::to_string(p.phase_preamble) + ", " +
           std::to_string(p.feedback_preamble) + ")";
}

inline std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

} // namespace detail

inline CommandResult run_curves(const RunConfig& cfg)
{
    using namespace detail;
    const RangeProblem prob = cfg.problem();
    const GainCurve curve = gain_curve(prob);

    csv::Table t({"snr_db", "achievable_db", "required_db", "n_zc", "n_ph", "n_fb"});
    for (std::size_t i = 0; i < curve.snr_grid_db.size(); ++i) {
        const auto& a = curve.allocations[i];
        t.add_row({format_real(curve.snr_grid_db[i]), format_real(curve.achievable_total_gain_db[i]),
                   format_real(curve.required_total_gain_db[i]), a ? format_int(a->lengths.zc_repeats) : "",
                   a ? format_int(a->lengths.phase_preamble) : "", a ? format_int(a->lengths.feedback_preamble) : ""});
    }
    const auto path = out_path(cfg, "curves.csv");
    t.write(path);
    return {"curves: " + std::to_string(curve.snr_grid_db.size()) + " points, N=" +
                std::to_string(cfg.protocol.n_radios) + ", achievable total gain at top of grid " +
                fixed(curve.achievable_total_gain_db.back(), 3) + " dB",
            {path}};
}

inline CommandResult run_range(const RunConfig& cfg)
{
    using namespace detail;
    const RangeProblem prob = cfg.problem();
    const RangeSolution sol = max_range(prob);

    csv::Table t(range_header());
    t.add_row(range_cells(cfg.protocol.n_radios, cfg.protocol.overhead_budget, cfg.link.dest_power_delta_db,
                          sol.ideal_distance_m, sol));
    const auto path = out_path(cfg, "range.csv");
    t.write(path);
    return {"range: min feasible SNR " + fixed(sol.min_feasible_snr_db, 4) + " dB, max distance " +
                fixed(sol.max_distance_m, 2) + " m (ideal " + fixed(sol.ideal_distance_m, 2) + " m), allocation " +
                triple(sol.allocation_at_solution.lengths),
            {path}};
}

inline CommandResult run_sweep(const RunConfig& cfg)
{
    using namespace detail;
    const RangeProblem prob = cfg.problem();
    const auto rows = sweep(prob, cfg.sweep.n_radios, cfg.sweep.overhead_budget, cfg.sweep.dest_power_delta_db);

    csv::Table t(range_header());
    std::size_t infeasible = 0;
    for (const auto& r : rows) {
        t.add_row(range_cells(r.n_radios, r.overhead_budget, r.dest_power_delta_db, r.ideal_distance_m, r.solution));
        if (!r.solution) ++infeasible;
    }
    const auto path = out_path(cfg, "sweep.csv");
    t.write(path);
    return {"sweep: " + std::to_string(rows.size()) + " cells, " + std::to_string(infeasible) + " infeasible",
            {path}};
}

inline CommandResult run_optimize(const RunConfig& cfg)
{
    using namespace detail;
    validate(cfg.protocol);
    const double snr = db_to_linear(cfg.operating_snr_db);
    const double snr_dr = downlink_snr(snr, cfg.link);
    const PreambleAllocation a = optimize_preambles(cfg.protocol, snr, snr_dr);
    const VarianceBreakdown v = combining_phase_variance(cfg.protocol, a.lengths, snr, snr_dr);

    csv::Table t({"n_radios", "overhead_budget", "prebf_snr_db", "downlink_snr_db", "n_zc", "n_ph", "n_fb",
                  "overhead_used", "freq_meas_var", "freq_track_var", "phase_est_var", "feedback_var",
                  "combining_var"});
    t.add_row({format_int(cfg.protocol.n_radios), format_int(cfg.protocol.overhead_budget),
               format_real(cfg.operating_snr_db), format_real(linear_to_db(snr_dr)), format_int(a.lengths.zc_repeats),
               format_int(a.lengths.phase_preamble), format_int(a.lengths.feedback_preamble),
               format_int(a.overhead_used), format_real(v.freq_meas_var), format_real(v.freq_track_var),
               format_real(v.phase_est_var), format_real(v.feedback_var), format_real(v.combining_var)});
    const auto path = out_path(cfg, "optimize.csv");
    t.write(path);
    std::ostringstream var;
    var.imbue(std::locale::classic());
    var << v.combining_var;
    return {"optimize: allocation " + triple(a.lengths) + ", overhead " + std::to_string(a.overhead_used) + "/" +
                std::to_string(cfg.protocol.overhead_budget) + ", combining variance " + var.str() + " rad^2",
            {path}};
}

inline CommandResult run_gaindist(const RunConfig& cfg)
{
    using namespace detail;
    const int n = cfg.protocol.n_radios;
    const double var = cfg.montecarlo.phase_error_var;
    const GainDistribution dist = gamma_params(n, var);
    const auto sorted = sorted_samples(sample_gains(n, var, cfg.montecarlo.samples, cfg.seed, cfg.threads));

    csv::Table t({"g", "cdf_analytic", "cdf_empirical"});
    const int points = cfg.montecarlo.cdf_points;
    for (int i = 0; i < points; ++i) {
        const double g = static_cast<double>(n) * i / (points - 1);
        t.add_row({format_real(g), format_real(gain_cdf(g, dist)), format_real(empirical_cdf(sorted, g))});
    }
    const auto path = out_path(cfg, "gaindist.csv");
    t.write(path);
    return {"gaindist: N=" + std::to_string(n) + ", shape " + fixed(dist.shape, 6) + ", scale " +
                fixed(dist.scale, 6) + ", KS distance " + fixed(ks_distance(sorted, dist), 5),
            {path}};
}

inline CommandResult run_montecarlo(const RunConfig& cfg)
{
    using namespace detail;
    const int n = cfg.protocol.n_radios;
    const double var = cfg.montecarlo.phase_error_var;
    const GainDistribution dist = gamma_params(n, var);
    const GainSampleSet set = sample_gains(n, var, cfg.montecarlo.samples, cfg.seed, cfg.threads);
    const auto sorted = sorted_samples(set);

    double mean = 0.0;
    for (double g : sorted) mean += g;
    mean /= sorted.size();
    double sq = 0.0;
    for (double g : sorted) sq += (g - mean) * (g - mean);
    const double variance = sorted.size() > 1 ? sq / (sorted.size() - 1) : 0.0;

    const double p = 1.0 - cfg.p_min;
    const double snr = db_to_linear(cfg.operating_snr_db);
    const double req = db_to_linear(cfg.required_snr_db);
    std::size_t outages = 0;
    for (double g : set.samples)
        if (n * g * snr < req) ++outages;
    const double outage = static_cast<double>(outages) / set.samples.size();
    const double outage_analytic = gain_cdf(std::nextafter(req / (n * snr), 0.0), dist);

    csv::Table summary({"statistic", "empirical", "analytic"});
    summary.add_row({"mean", format_real(mean), format_real(dist.mean())});
    summary.add_row({"variance", format_real(variance), format_real(dist.variance())});
    summary.add_row({"guaranteed_gain", format_real(empirical_quantile(sorted, p)), format_real(gain_quantile(p, dist))});
    summary.add_row({"outage", format_real(outage), format_real(outage_analytic)});
    summary.add_row({"ks_distance", format_real(ks_distance(sorted, dist)), ""});
    const auto summary_path = out_path(cfg, "montecarlo.csv");
    summary.write(summary_path);

    csv::Table cdf({"g", "cdf_empirical"});
    const int points = cfg.montecarlo.cdf_points;
    for (int i = 0; i < points; ++i) {
        const double g = static_cast<double>(n) * i / (points - 1);
        cdf.add_row({format_real(g), format_real(empirical_cdf(sorted, g))});
    }
    const auto cdf_path = out_path(cfg, "montecarlo_cdf.csv");
    cdf.write(cdf_path);

    return {"montecarlo: " + std::to_string(set.samples.size()) + " draws, mean " + fixed(mean, 5) +
                " (analytic " + fixed(dist.mean(), 5) + "), outage " + fixed(outage, 5),
            {summary_path, cdf_path}};
}

inline CommandResult run_simulate(const RunConfig& cfg)
{
    using namespace detail;
    ProtocolConfig protocol = cfg.protocol;
    validate(protocol);
    const double snr = db_to_linear(cfg.operating_snr_db);
    const double snr_dr = downlink_snr(snr, cfg.link);
    if (cfg.simulate.optimize_preambles) protocol.preambles = optimize_preambles(protocol, snr, snr_dr).lengths;

    const auto trials = sim::run_protocol_trials(protocol, snr, snr_dr, cfg.simulate.trials, cfg.seed, cfg.threads,
                                                 {cfg.simulate.noiseless});

    std::vector<std::string> header{"trial"};
    for (int r = 0; r < protocol.n_radios; ++r) header.push_back("freq_err_hz_" + std::to_string(r));
    for (int r = 0; r < protocol.n_radios; ++r) header.push_back("phase_err_rad_" + std::to_string(r));
    header.push_back("realized_gain");
    csv::Table t(header);

    double freq_sq = 0.0, phase_sq = 0.0, gain_sum = 0.0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        std::vector<std::string> row{format_int(static_cast<long long>(i))};
        for (double f : trials[i].freq_errors_hz) {
            row.push_back(format_real(f));
            freq_sq += f * f;
        }
        for (double phi : trials[i].phase_errors_rad) {
            row.push_back(format_real(phi));
            phase_sq += phi * phi;
        }
        row.push_back(format_real(trials[i].realized_gain));
        gain_sum += trials[i].realized_gain;
        t.add_row(std::move(row));
    }
    const auto path = out_path(cfg, "sim.csv");
    t.write(path);

    const double count = static_cast<double>(trials.size()) * protocol.n_radios;
    const VarianceBreakdown v = combining_phase_variance(protocol, snr, snr_dr);
    const double freq_var = freq_sq / count;
    const double phase_var = phase_sq / count;
    const double mean_gain = gain_sum / trials.size();
    csv::Table summary({"quantity", "empirical", "analytic"});
    summary.add_row({"freq_track_var", format_real(freq_var), format_real(cfg.simulate.noiseless ? 0.0 : v.freq_track_var)});
    summary.add_row({"combining_var", format_real(phase_var), format_real(cfg.simulate.noiseless ? 0.0 : v.combining_var)});
    summary.add_row({"mean_gain", format_real(mean_gain),
                     format_real(gamma_params(protocol.n_radios, cfg.simulate.noiseless ? 0.0 : v.combining_var).mean())});
    const auto summary_path = out_path(cfg, "sim_summary.csv");
    summary.write(summary_path);

    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "simulate: " << trials.size() << " trials, allocation " << triple(protocol.preambles)
       << ", combining variance " << phase_var << " rad^2 (analytic " << v.combining_var << ")";
    return {os.str(), {path, summary_path}};
}

inline const std::map<std::string, std::function<CommandResult(const RunConfig&)>>& commands()
{
    static const std::map<std::string, std::function<CommandResult(const RunConfig&)>> table{
        {"curves", run_curves},     {"range", run_range},           {"sweep", run_sweep},
        {"optimize", run_optimize}, {"gaindist", run_gaindist},     {"montecarlo", run_montecarlo},
        {"simulate", run_simulate},
    };
    return table;
}

} // namespace dbfrange::app

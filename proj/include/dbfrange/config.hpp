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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbfrange/errors.hpp"
#include "dbfrange/link_budget.hpp"
#include "dbfrange/range_solver.hpp"
#include "dbfrange/variance_models.hpp"

namespace dbfrange {

struct SweepLists {
    std::vector<int> n_radios{2, 4, 8, 16};
    std::vector<long> overhead_budget{500, 1000, 2000};
    std::vector<double> dest_power_delta_db{5.0, 15.0, 25.0};
};

struct MonteCarloSettings {
    std::size_t samples = 100000;
    double phase_error_var = 0.1;
    int cdf_points = 101;
};

struct SimulateSettings {
    std::size_t trials = 10000;
    bool noiseless = false;
    bool optimize_preambles = true;
};

struct RunConfig {
    LinkBudget link;
    ProtocolConfig protocol;
    double required_snr_db = 5.0;
    double p_min = 0.9;
    SnrGrid grid;
    double refine_tol_db = 1e-4;
    // Pre-BF SNR used by the single-point commands (optimize, simulate).
    double operating_snr_db = 0.0;
    SweepLists sweep;
    MonteCarloSettings montecarlo;
    SimulateSettings simulate;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    unsigned threads = 0;

    RangeProblem problem() const
    {
        RangeProblem prob;
        prob.protocol = protocol;
        prob.link = link;
        prob.required_snr_db = required_snr_db;
        prob.p_min = p_min;
        prob.grid = grid;
        prob.refine_tol_db = refine_tol_db;
        prob.threads = threads;
        return prob;
    }
};

enum class FieldKind { Integer, Real, Boolean, Text, IntegerList, RealList };

// One settable config entry. `block` is empty for top-level keys.
struct ConfigField {
    std::string block;
    std::string key;
    FieldKind kind;
    std::function<void(RunConfig&, const nlohmann::json&)> assign;

    std::string path() const { return block.empty() ? key : block + "." + key; }

    // Long CLI flag: key with dashes; sweep lists are prefixed to stay unique.
    std::string flag() const
    {
        std::string name = (block == "sweep" ? "sweep_" : "") + key;
        for (auto& c : name)
            if (c == '_') c = '-';
        return "--" + name;
    }
};

namespace config_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& why)
{
    throw ConfigError(path + ": " + why);
}

inline std::string show(const json& j) { return j.dump(); }

inline double real(const json& j, const std::string& path)
{
    if (!j.is_number()) fail(path, "expected a number, got " + show(j));
    return j.get<double>();
}

inline long long integer(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
    }
    fail(path, "expected an integer, got " + show(j));
}

inline bool boolean(const json& j, const std::string& path)
{
    if (!j.is_boolean()) fail(path, "expected true or false, got " + show(j));
    return j.get<bool>();
}

inline std::string text(const json& j, const std::string& path)
{
    if (!j.is_string()) fail(path, "expected a string, got " + show(j));
    return j.get<std::string>();
}

inline void check(bool ok, const std::string& path, const std::string& constraint, const json& got)
{
    if (!ok) fail(path, "must be " + constraint + " (got " + show(got) + ")");
}

template <class T, class Get>
std::vector<T> list(const json& j, const std::string& path, Get get)
{
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array, got " + show(j));
    std::vector<T> out;
    for (const auto& v : j) out.push_back(static_cast<T>(get(v, path)));
    return out;
}

inline ConfigField real_field(std::string block, std::string key, std::function<double&(RunConfig&)> ref,
                              std::function<bool(double)> ok, std::string constraint)
{
    const std::string path = block.empty() ? key : block + "." + key;
    return {std::move(block), std::move(key), FieldKind::Real,
            [=](RunConfig& c, const json& j) {
                const double v = real(j, path);
                check(std::isfinite(v) && ok(v), path, constraint, j);
                ref(c) = v;
            }};
}

template <class T>
ConfigField int_field(std::string block, std::string key, std::function<T&(RunConfig&)> ref, long long min_value)
{
    const std::string path = block.empty() ? key : block + "." + key;
    return {std::move(block), std::move(key), FieldKind::Integer,
            [=](RunConfig& c, const json& j) {
                const long long v = integer(j, path);
                check(v >= min_value, path, ">= " + std::to_string(min_value), j);
                ref(c) = static_cast<T>(v);
            }};
}

inline ConfigField bool_field(std::string block, std::string key, std::function<bool&(RunConfig&)> ref)
{
    const std::string path = block.empty() ? key : block + "." + key;
    return {std::move(block), std::move(key), FieldKind::Boolean,
            [=](RunConfig& c, const json& j) { ref(c) = boolean(j, path); }};
}

inline auto positive = [](double v) { return v > 0.0; };
inline auto nonnegative = [](double v) { return v >= 0.0; };
inline auto any_value = [](double) { return true; };

} // namespace config_detail

/// Every key accepted in the JSON run-config.
inline const std::vector<ConfigField>& config_fields()
{
    using namespace config_detail;
    static const std::vector<ConfigField> fields = [] {
        std::vector<ConfigField> f;
        // link
        f.push_back(real_field("link", "tx_power_dbm", [](RunConfig& c) -> double& { return c.link.tx_power_dbm; },
                               any_value, "finite"));
        f.push_back(real_field("link", "dest_power_delta_db",
                               [](RunConfig& c) -> double& { return c.link.dest_power_delta_db; }, nonnegative,
                               ">= 0"));
        f.push_back(real_field("link", "noise_figure_db",
                               [](RunConfig& c) -> double& { return c.link.noise_figure_db; }, any_value, "finite"));
        f.push_back(real_field("link", "noise_bandwidth_hz",
                               [](RunConfig& c) -> double& { return c.link.noise_bandwidth_hz; }, positive, "> 0"));
        f.push_back(real_field("link", "wavelength_m", [](RunConfig& c) -> double& { return c.link.wavelength_m; },
                               positive, "> 0"));
        f.push_back(real_field("link", "path_loss_exponent",
                               [](RunConfig& c) -> double& { return c.link.path_loss_exponent; }, positive, "> 0"));
        f.push_back({"link", "path_loss_model", FieldKind::Text, [](RunConfig& c, const json& j) {
                         const std::string v = text(j, "link.path_loss_model");
                         if (v == "log_distance_power") c.link.path_loss_model = PathLossModel::LogDistancePower;
                         else if (v == "amplitude_exponent") c.link.path_loss_model = PathLossModel::AmplitudeExponent;
                         else
                             fail("link.path_loss_model",
                                  "must be \"log_distance_power\" or \"amplitude_exponent\" (got " + show(j) + ")");
                     }});

        // protocol
        f.push_back(int_field<int>("protocol", "n_radios", [](RunConfig& c) -> int& { return c.protocol.n_radios; }, 1));
        f.push_back(int_field<long>("protocol", "overhead_budget",
                                    [](RunConfig& c) -> long& { return c.protocol.overhead_budget; }, 1));
        f.push_back(int_field<int>("protocol", "zc_length", [](RunConfig& c) -> int& { return c.protocol.zc_length; }, 2));
        f.push_back(int_field<int>("protocol", "zc_repeats",
                                   [](RunConfig& c) -> int& { return c.protocol.preambles.zc_repeats; }, 2));
        f.push_back(int_field<int>("protocol", "phase_preamble",
                                   [](RunConfig& c) -> int& { return c.protocol.preambles.phase_preamble; }, 1));
        f.push_back(int_field<int>("protocol", "feedback_preamble",
                                   [](RunConfig& c) -> int& { return c.protocol.preambles.feedback_preamble; }, 1));
        f.push_back(int_field<int>("protocol", "guard1", [](RunConfig& c) -> int& { return c.protocol.guard1; }, 0));
        f.push_back(int_field<int>("protocol", "guard2", [](RunConfig& c) -> int& { return c.protocol.guard2; }, 0));
        f.push_back(int_field<int>("protocol", "guard3", [](RunConfig& c) -> int& { return c.protocol.guard3; }, 0));
        f.push_back(int_field<int>("protocol", "payload_len", [](RunConfig& c) -> int& { return c.protocol.payload_len; }, 1));
        f.push_back(real_field("protocol", "sample_time_s",
                               [](RunConfig& c) -> double& { return c.protocol.sample_time_s; }, positive, "> 0"));
        f.push_back(real_field("protocol", "eval_time_s",
                               [](RunConfig& c) -> double& { return c.protocol.eval_time_s; }, positive, "> 0"));
        f.push_back(real_field("protocol", "kf_process_var",
                               [](RunConfig& c) -> double& { return c.protocol.kf_process_var; }, positive, "> 0"));
        f.push_back(bool_field("protocol", "count_both_feedback_preambles",
                               [](RunConfig& c) -> bool& { return c.protocol.count_both_feedback_preambles; }));

        // solver
        f.push_back(real_field("solver", "required_snr_db", [](RunConfig& c) -> double& { return c.required_snr_db; },
                               any_value, "finite"));
        f.push_back(real_field("solver", "p_min", [](RunConfig& c) -> double& { return c.p_min; },
                               [](double v) { return v > 0.0 && v < 1.0; }, "in (0, 1)"));
        f.push_back(real_field("solver", "grid_min_db", [](RunConfig& c) -> double& { return c.grid.min_db; },
                               any_value, "finite"));
        f.push_back(real_field("solver", "grid_max_db", [](RunConfig& c) -> double& { return c.grid.max_db; },
                               any_value, "finite"));
        f.push_back(real_field("solver", "grid_step_db", [](RunConfig& c) -> double& { return c.grid.step_db; },
                               positive, "> 0"));
        f.push_back(real_field("solver", "refine_tol_db", [](RunConfig& c) -> double& { return c.refine_tol_db; },
                               positive, "> 0"));
        f.push_back(real_field("solver", "operating_snr_db",
                               [](RunConfig& c) -> double& { return c.operating_snr_db; }, any_value, "finite"));

        // sweep
        f.push_back({"sweep", "n_radios", FieldKind::IntegerList, [](RunConfig& c, const json& j) {
                         c.sweep.n_radios = list<int>(j, "sweep.n_radios", integer);
                         for (int v : c.sweep.n_radios) check(v >= 1, "sweep.n_radios", "entries >= 1", j);
                     }});
        f.push_back({"sweep", "overhead_budget", FieldKind::IntegerList, [](RunConfig& c, const json& j) {
                         c.sweep.overhead_budget = list<long>(j, "sweep.overhead_budget", integer);
                         for (long v : c.sweep.overhead_budget) check(v >= 1, "sweep.overhead_budget", "entries >= 1", j);
                     }});
        f.push_back({"sweep", "dest_power_delta_db", FieldKind::RealList, [](RunConfig& c, const json& j) {
                         c.sweep.dest_power_delta_db = list<double>(j, "sweep.dest_power_delta_db", real);
                         for (double v : c.sweep.dest_power_delta_db)
                             check(v >= 0.0, "sweep.dest_power_delta_db", "entries >= 0", j);
                     }});

        // montecarlo
        f.push_back(int_field<std::size_t>("montecarlo", "samples",
                                           [](RunConfig& c) -> std::size_t& { return c.montecarlo.samples; }, 1));
        f.push_back(real_field("montecarlo", "phase_error_var",
                               [](RunConfig& c) -> double& { return c.montecarlo.phase_error_var; }, nonnegative,
                               ">= 0"));
        f.push_back(int_field<int>("montecarlo", "cdf_points",
                                   [](RunConfig& c) -> int& { return c.montecarlo.cdf_points; }, 2));

        // simulate
        f.push_back(int_field<std::size_t>("simulate", "trials",
                                           [](RunConfig& c) -> std::size_t& { return c.simulate.trials; }, 1));
        f.push_back(bool_field("simulate", "noiseless", [](RunConfig& c) -> bool& { return c.simulate.noiseless; }));
        f.push_back(bool_field("simulate", "optimize_preambles",
                               [](RunConfig& c) -> bool& { return c.simulate.optimize_preambles; }));

        // top level
        f.push_back({"", "seed", FieldKind::Integer, [](RunConfig& c, const json& j) {
                         const long long v = integer(j, "seed");
                         check(v >= 0, "seed", ">= 0", j);
                         c.seed = static_cast<std::uint64_t>(v);
                     }});
        f.push_back({"", "output_dir", FieldKind::Text,
                     [](RunConfig& c, const json& j) { c.output_dir = text(j, "output_dir"); }});
        f.push_back(int_field<unsigned>("", "threads", [](RunConfig& c) -> unsigned& { return c.threads; }, 0));
        return f;
    }();
    return fields;
}

inline const ConfigField* find_field(const std::string& block, const std::string& key)
{
    for (const auto& f : config_fields())
        if (f.block == block && f.key == key) return &f;
    return nullptr;
}

/// Validates a parsed JSON document and fills the defaults. When the
/// protocol block does not set eval_time_s it is 5000 * sample_time_s.
inline RunConfig config_from_json(const nlohmann::json& doc)
{
    using nlohmann::json;
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");

    RunConfig cfg;
    bool eval_time_set = false;
    // Blocks are applied in table order so cross-field checks see final values.
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object()) {
            bool known_block = false;
            for (const auto& f : config_fields()) known_block = known_block || f.block == key;
            if (!known_block) throw ConfigError("unknown config key \"" + key + "\"");
            for (const auto& [inner, v] : value.items()) {
                if (!find_field(key, inner)) throw ConfigError("unknown config key \"" + key + "." + inner + "\"");
            }
        } else if (!find_field("", key)) {
            for (const auto& f : config_fields())
                if (f.block == key) throw ConfigError(key + ": expected an object, got " + value.dump());
            throw ConfigError("unknown config key \"" + key + "\"");
        }
    }
    for (const auto& f : config_fields()) {
        const json* v = nullptr;
        if (f.block.empty()) {
            if (doc.contains(f.key)) v = &doc.at(f.key);
        } else if (doc.contains(f.block) && doc.at(f.block).contains(f.key)) {
            v = &doc.at(f.block).at(f.key);
        }
        if (!v) continue;
        f.assign(cfg, *v);
        if (f.path() == "protocol.eval_time_s") eval_time_set = true;
    }
    if (!eval_time_set) cfg.protocol.eval_time_s = 5000.0 * cfg.protocol.sample_time_s;
    if (!(cfg.grid.max_db >= cfg.grid.min_db))
        throw ConfigError("solver.grid_max_db: must be >= solver.grid_min_db");
    return cfg;
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset into line/column.
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": JSON syntax error: " + e.what());
    }
}

inline nlohmann::json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline RunConfig parse_config(const std::string& path) { return config_from_json(load_json_file(path)); }

/// Writes a command-line override into the JSON document. Lists are given as
/// comma-separated values; booleans as true/false.
inline void apply_override(nlohmann::json& doc, const ConfigField& field, const std::string& raw)
{
    using nlohmann::json;
    json value;
    switch (field.kind) {
    case FieldKind::Text: value = raw; break;
    case FieldKind::Integer:
    case FieldKind::Real:
    case FieldKind::Boolean:
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            throw ConfigError(field.path() + ": cannot parse value \"" + raw + "\" from " + field.flag());
        }
        break;
    case FieldKind::IntegerList:
    case FieldKind::RealList:
        try {
            value = json::parse("[" + raw + "]");
        } catch (const json::parse_error&) {
            throw ConfigError(field.path() + ": cannot parse list \"" + raw + "\" from " + field.flag());
        }
        break;
    }
    if (field.block.empty()) doc[field.key] = value;
    else doc[field.block][field.key] = value;
}

} // namespace dbfrange

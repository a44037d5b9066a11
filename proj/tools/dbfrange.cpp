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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dbfrange/app.hpp"
#include "dbfrange/config.hpp"
#include "dbfrange/errors.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kInfeasible = 3, kNumeric = 4 };

} // namespace

int main(int argc, char** argv)
{
    using namespace dbfrange;

    CLI::App cli{"Maximum communication range of destination-led distributed transmit beamforming"};
    cli.require_subcommand(1);
    cli.fallthrough();

    std::string config_path;
    cli.add_option("-c,--config", config_path, "JSON run-config file");

    // Every config field gets a long flag of the same name.
    std::map<const ConfigField*, std::string> overrides;
    std::map<const ConfigField*, CLI::Option*> options;
    for (const auto& field : config_fields()) {
        auto* opt = cli.add_option(field.flag(), overrides[&field], "override " + field.path());
        options[&field] = opt;
    }

    static const std::map<std::string, std::string> descriptions{
        {"curves", "achievable vs required total gain over the SNR grid (curves.csv)"},
        {"range", "maximum range at the configured operating point (range.csv)"},
        {"sweep", "maximum range over the N x L x delta-P sweep lists (sweep.csv)"},
        {"optimize", "optimal preamble allocation at solver.operating_snr_db (optimize.csv)"},
        {"gaindist", "analytic vs empirical CDF of the combining gain (gaindist.csv)"},
        {"montecarlo", "Monte-Carlo summary of the combining gain (montecarlo.csv, montecarlo_cdf.csv)"},
        {"simulate", "waveform-level protocol trials (sim.csv, sim_summary.csv)"},
    };
    for (const auto& [name, _] : app::commands()) cli.add_subcommand(name, descriptions.at(name));

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return kUsage;
    }

    try {
        nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_json_file(config_path);
        for (const auto& [field, opt] : options)
            if (opt->count() > 0) apply_override(doc, *field, overrides.at(field));
        const RunConfig cfg = config_from_json(doc);

        const std::string name = cli.get_subcommands().front()->get_name();
        const app::CommandResult result = app::commands().at(name)(cfg);
        std::cout << result.summary << '\n';
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const NoFeasiblePoint& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
}

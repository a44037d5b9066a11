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

#include <stdexcept>
#include <string>

namespace dbfrange {

// Input outside an operation's mathematical domain (non-positive SNR, d <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The overhead budget cannot hold even the smallest preamble allocation.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, long minimal_budget)
        : std::runtime_error(what), minimal_budget_(minimal_budget) {}

    long minimal_budget() const noexcept { return minimal_budget_; }

private:
    long minimal_budget_;
};

// The post-BF requirement is not met anywhere on the SNR grid.
class NoFeasiblePoint : public std::runtime_error {
public:
    NoFeasiblePoint(const std::string& what, double best_margin_db)
        : std::runtime_error(what), best_margin_db_(best_margin_db) {}

    double best_margin_db() const noexcept { return best_margin_db_; }

private:
    double best_margin_db_;
};

// An iterative routine did not converge or a runtime sanity check failed.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A run-config value violates its constraint, or an unknown key was supplied.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dbfrange

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

#include "dbfrange/errors.hpp"
#include "dbfrange/units.hpp"
#include "dbfrange/link_budget.hpp"
#include "dbfrange/variance_models.hpp"
#include "dbfrange/preamble_optimizer.hpp"
#include "dbfrange/special_functions.hpp"
#include "dbfrange/gain_distribution.hpp"
#include "dbfrange/random.hpp"
#include "dbfrange/parallel.hpp"
#include "dbfrange/monte_carlo.hpp"
#include "dbfrange/signal_sim.hpp"
#include "dbfrange/range_solver.hpp"
#include "dbfrange/config.hpp"
#include "dbfrange/csv.hpp"
#include "dbfrange/app.hpp"

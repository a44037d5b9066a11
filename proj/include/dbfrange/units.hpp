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
#include <limits>
#include <numbers>

namespace dbfrange {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Returns -inf for a zero ratio, which downstream code treats as "no gain".
inline double linear_to_db(double ratio)
{
    if (ratio <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ratio);
}

// Wraps an angle into (-pi, pi].
inline double wrap_phase(double rad)
{
    double w = std::remainder(rad, kTwoPi);
    if (w <= -std::numbers::pi) w += kTwoPi;
    return w;
}

} // namespace dbfrange

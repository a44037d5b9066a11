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
#include <numbers>

#include "dbfrange/errors.hpp"
#include "dbfrange/units.hpp"

namespace dbfrange {

// Thermal noise density at 290 K.
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

enum class PathLossModel {
    // FSPL at a 1 m reference plus 10*k*log10(d) in power.
    LogDistancePower,
    // Amplitude loss a = (lambda / 2pi) * d^k, applied as a^2 in power.
    AmplitudeExponent,
};

struct LinkBudget {
    double tx_power_dbm = 0.0;
    double dest_power_delta_db = 15.0;
    double noise_figure_db = 3.0;
    double noise_bandwidth_hz = 1.0e6;
    double wavelength_m = 0.3261; // 915 MHz
    double path_loss_exponent = 2.3;
    PathLossModel path_loss_model = PathLossModel::LogDistancePower;
};

inline void validate(const LinkBudget& link)
{
    if (!(link.dest_power_delta_db >= 0.0))
        throw DomainError("dest_power_delta_db must be >= 0");
    if (!(link.noise_bandwidth_hz > 0.0))
        throw DomainError("noise_bandwidth_hz must be > 0");
    if (!(link.wavelength_m > 0.0))
        throw DomainError("wavelength_m must be > 0");
    if (!(link.path_loss_exponent > 0.0))
        throw DomainError("path_loss_exponent must be > 0");
}

inline double noise_power_dbm(const LinkBudget& link)
{
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(link.noise_bandwidth_hz) + link.noise_figure_db;
}

// Free-space loss at the 1 m reference distance.
inline double reference_loss_db(const LinkBudget& link)
{
    return 20.0 * std::log10(4.0 * std::numbers::pi / link.wavelength_m);
}

/// Linear pre-BF SNR at the destination from a single radio at distance d (metres).
inline double prebf_snr(double d, const LinkBudget& link)
{
    if (!(d > 0.0)) throw DomainError("prebf_snr: distance must be > 0");
    switch (link.path_loss_model) {
    case PathLossModel::LogDistancePower: {
        const double loss_db = reference_loss_db(link) + 10.0 * link.path_loss_exponent * std::log10(d);
        return db_to_linear(link.tx_power_dbm - loss_db - noise_power_dbm(link));
    }
    case PathLossModel::AmplitudeExponent: {
        const double a = link.wavelength_m / kTwoPi * std::pow(d, link.path_loss_exponent);
        const double ratio_db = link.tx_power_dbm - noise_power_dbm(link);
        return db_to_linear(ratio_db) / (a * a);
    }
    }
    throw DomainError("prebf_snr: unknown path loss model");
}

/// Inverse of prebf_snr: the distance at which one radio's SNR equals snr.
inline double distance_from_snr(double snr, const LinkBudget& link)
{
    if (!(snr > 0.0)) throw DomainError("distance_from_snr: SNR must be > 0");
    const double k = link.path_loss_exponent;
    switch (link.path_loss_model) {
    case PathLossModel::LogDistancePower: {
        const double loss_db = link.tx_power_dbm - noise_power_dbm(link) - linear_to_db(snr);
        return std::pow(10.0, (loss_db - reference_loss_db(link)) / (10.0 * k));
    }
    case PathLossModel::AmplitudeExponent: {
        // a^2 = P_T / (snr * N0)  =>  d^k = (2pi / lambda) * a
        const double a = std::sqrt(db_to_linear(link.tx_power_dbm - noise_power_dbm(link)) / snr);
        return std::pow(kTwoPi / link.wavelength_m * a, 1.0 / k);
    }
    }
    throw DomainError("distance_from_snr: unknown path loss model");
}

// SNR of destination-transmitted signals at a DBF radio.
inline double downlink_snr(double prebf, const LinkBudget& link)
{
    if (!(prebf > 0.0)) throw DomainError("downlink_snr: SNR must be > 0");
    return prebf * db_to_linear(link.dest_power_delta_db);
}

} // namespace dbfrange

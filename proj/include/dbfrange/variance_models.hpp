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
#include <compare>
#include <string>

#include "dbfrange/errors.hpp"
#include "dbfrange/units.hpp"

namespace dbfrange {

// The three decision variables of the preamble design. Ordering is the
// optimizer's tie-break order.
struct PreambleLengths {
    int zc_repeats = 2;
    int phase_preamble = 70;
    int feedback_preamble = 70;

    auto operator<=>(const PreambleLengths&) const = default;
};

struct ProtocolConfig {
    int n_radios = 6;
    long overhead_budget = 1000;
    int zc_length = 64;
    PreambleLengths preambles;
    int guard1 = 10;
    int guard2 = 10;
    int guard3 = 10;
    int payload_len = 8000;
    double sample_time_s = 1.0e-6;
    double eval_time_s = 5000 * 1.0e-6;
    double kf_process_var = 1.0;
    // Feedback carries two identical preambles of feedback_preamble samples
    // each. When false the overhead counts one of them per radio, like the
    // N*(N_ph + N_fb) accounting; when true it counts both.
    bool count_both_feedback_preambles = false;

    // Samples occupied per radio by one unit of feedback_preamble.
    int feedback_slot_factor() const { return count_both_feedback_preambles ? 2 : 1; }
    int guards() const { return guard1 + guard2 + guard3; }
};

inline void validate(const ProtocolConfig& cfg)
{
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw DomainError(msg);
    };
    require(cfg.n_radios >= 1, "n_radios must be >= 1");
    require(cfg.overhead_budget >= 1, "overhead_budget must be >= 1");
    require(cfg.zc_length >= 2, "zc_length must be >= 2");
    require(cfg.preambles.zc_repeats >= 2, "zc_repeats must be >= 2");
    require(cfg.preambles.phase_preamble >= 1, "phase_preamble must be >= 1");
    require(cfg.preambles.feedback_preamble >= 1, "feedback_preamble must be >= 1");
    require(cfg.guard1 >= 0 && cfg.guard2 >= 0 && cfg.guard3 >= 0, "guards must be >= 0");
    require(cfg.payload_len >= 1, "payload_len must be >= 1");
    require(cfg.sample_time_s > 0.0, "sample_time_s must be > 0");
    require(cfg.eval_time_s > 0.0, "eval_time_s must be > 0");
    require(cfg.kf_process_var > 0.0, "kf_process_var must be > 0");
}

inline long overhead_samples(const ProtocolConfig& cfg, const PreambleLengths& p)
{
    const long sync = static_cast<long>(p.zc_repeats) * cfg.zc_length;
    const long per_radio = static_cast<long>(p.phase_preamble) +
                           static_cast<long>(cfg.feedback_slot_factor()) * p.feedback_preamble;
    return sync + cfg.n_radios * per_radio + cfg.guards();
}

inline long overhead_samples(const ProtocolConfig& cfg) { return overhead_samples(cfg, cfg.preambles); }

// Smallest budget that admits (N_ZC, N_ph, N_fb) = (2, 1, 1).
inline long minimal_overhead(const ProtocolConfig& cfg) { return overhead_samples(cfg, {2, 1, 1}); }

struct VarianceBreakdown {
    double freq_meas_var = 0.0;  // Hz^2
    double freq_track_var = 0.0; // Hz^2
    double phase_est_var = 0.0;  // rad^2
    double feedback_var = 0.0;   // rad^2
    double combining_var = 0.0;  // rad^2
};

/// Frequency-offset error variance (Hz^2) of the estimator that averages the
/// phase rotation between successive ZC repetitions received at downlink SNR
/// `snr_dr`.
inline double freq_est_variance(double snr_dr, int zc_repeats, int zc_length, double sample_time_s)
{
    if (zc_repeats < 2) throw DomainError("freq_est_variance: zc_repeats must be >= 2");
    if (!(snr_dr > 0.0)) throw DomainError("freq_est_variance: SNR must be > 0");
    if (zc_length < 1 || !(sample_time_s > 0.0))
        throw DomainError("freq_est_variance: zc_length and sample_time_s must be positive");
    const double m = zc_length;
    const double reps = zc_repeats - 1;
    const double phase_var = (2.0 * snr_dr + reps) / (2.0 * m * reps * reps * snr_dr * snr_dr);
    const double to_hz = kTwoPi * m * sample_time_s;
    return phase_var / (to_hz * to_hz);
}

/// Steady-state posterior variance of a scalar random-walk Kalman filter with
/// process variance q and measurement variance `freq_meas_var`.
inline double kalman_steady_variance(double freq_meas_var, double q)
{
    if (!(q > 0.0)) throw DomainError("kalman_steady_variance: q must be > 0");
    if (!(freq_meas_var >= 0.0)) throw DomainError("kalman_steady_variance: measurement variance must be >= 0");
    // (-q + q sqrt(1 + 4r/q)) / 2, rearranged to avoid cancellation when r << q
    return 2.0 * freq_meas_var / (1.0 + std::sqrt(1.0 + 4.0 * freq_meas_var / q));
}

// Correlate-and-arctan phase estimate on n_ph uplink samples.
inline double phase_est_variance(double snr_prebf, int n_ph)
{
    if (!(snr_prebf > 0.0) || n_ph < 1) throw DomainError("phase_est_variance: need SNR > 0 and n_ph >= 1");
    return 1.0 / (2.0 * n_ph * snr_prebf);
}

// Phase-difference decoding of two identical n_fb-sample preambles.
inline double feedback_variance(double snr_dr, int n_fb)
{
    if (!(snr_dr > 0.0) || n_fb < 1) throw DomainError("feedback_variance: need SNR > 0 and n_fb >= 1");
    return 1.0 / (n_fb * snr_dr) + 1.0 / (2.0 * n_fb * snr_dr * snr_dr);
}

inline VarianceBreakdown combining_phase_variance(const ProtocolConfig& cfg, const PreambleLengths& p,
                                                  double snr_prebf, double snr_dr)
{
    VarianceBreakdown v;
    v.freq_meas_var = freq_est_variance(snr_dr, p.zc_repeats, cfg.zc_length, cfg.sample_time_s);
    v.freq_track_var = kalman_steady_variance(v.freq_meas_var, cfg.kf_process_var);
    v.phase_est_var = phase_est_variance(snr_prebf, p.phase_preamble);
    v.feedback_var = feedback_variance(snr_dr, p.feedback_preamble);
    const double drift = kTwoPi * cfg.eval_time_s;
    v.combining_var = drift * drift * v.freq_track_var + v.phase_est_var + v.feedback_var;
    return v;
}

inline VarianceBreakdown combining_phase_variance(const ProtocolConfig& cfg, double snr_prebf, double snr_dr)
{
    return combining_phase_variance(cfg, cfg.preambles, snr_prebf, snr_dr);
}

} // namespace dbfrange

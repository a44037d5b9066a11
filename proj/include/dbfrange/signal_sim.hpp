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
#include <complex>
#include <cstdint>
#include <numeric>
#include <numbers>
#include <span>
#include <vector>

#include "dbfrange/errors.hpp"
#include "dbfrange/link_budget.hpp"
#include "dbfrange/parallel.hpp"
#include "dbfrange/random.hpp"
#include "dbfrange/units.hpp"
#include "dbfrange/variance_models.hpp"

namespace dbfrange::sim {

using cplx = std::complex<double>;

// Discrete-time complex baseband burst with unit nominal signal power.
struct ComplexBaseband {
    std::vector<cplx> samples;
    double sample_time_s = 1.0;

    std::size_t size() const { return samples.size(); }
};

// Zadoff-Chu sequence: exp(-j pi u n(n+1) / M) for odd M, exp(-j pi u n^2 / M) for even M.
inline ComplexBaseband zc_sequence(int length, int root, double sample_time_s = 1.0)
{
    if (length < 2) throw DomainError("zc_sequence: length must be >= 2");
    if (root < 1 || root >= length || std::gcd(root, length) != 1)
        throw DomainError("zc_sequence: root must satisfy 1 <= root < M and gcd(root, M) = 1");
    ComplexBaseband z{std::vector<cplx>(length), sample_time_s};
    const long long m = length;
    for (long long n = 0; n < m; ++n) {
        // Reduce the quadratic index mod 2M before scaling to keep the phase exact.
        const long long q = (length % 2 == 1) ? n * (n + 1) : n * n;
        const long long r = (root * q) % (2 * m);
        z.samples[n] = std::polar(1.0, -std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
    }
    return z;
}

// Unit-modulus sequence with i.i.d. uniform phases.
inline ComplexBaseband pseudorandom_preamble(int length, Rng& rng, double sample_time_s = 1.0)
{
    if (length < 1) throw DomainError("pseudorandom_preamble: length must be >= 1");
    ComplexBaseband p{std::vector<cplx>(length), sample_time_s};
    for (auto& s : p.samples) s = std::polar(1.0, rng.uniform_phase());
    return p;
}

// Multiplies sample n by exp(j(2 pi f n T_s + phase)).
inline void rotate(ComplexBaseband& x, double freq_hz, double phase_rad)
{
    for (std::size_t n = 0; n < x.size(); ++n)
        x.samples[n] *= std::polar(1.0, kTwoPi * freq_hz * n * x.sample_time_s + phase_rad);
}

// Adds circular white Gaussian noise of variance 1/snr per sample.
inline void add_noise(ComplexBaseband& x, double snr, Rng& rng)
{
    if (!(snr > 0.0)) throw DomainError("add_noise: SNR must be > 0");
    const double var = 1.0 / snr;
    for (auto& s : x.samples) s += rng.complex_normal(var);
}

/// Frequency offset from the summed correlation of each ZC repetition with the
/// previous one: arg(sum) / (2 pi M T_s). Unambiguous for |f| < 1 / (2 M T_s).
inline double estimate_freq_offset(const ComplexBaseband& rx, int zc_length, int zc_repeats)
{
    if (zc_repeats < 2 || zc_length < 1) throw DomainError("estimate_freq_offset: need zc_repeats >= 2");
    const std::size_t m = zc_length;
    if (rx.size() < m * zc_repeats) throw std::invalid_argument("estimate_freq_offset: burst shorter than preamble");
    cplx acc{0.0, 0.0};
    for (std::size_t k = 1; k < static_cast<std::size_t>(zc_repeats); ++k)
        for (std::size_t i = 0; i < m; ++i)
            acc += rx.samples[k * m + i] * std::conj(rx.samples[(k - 1) * m + i]);
    return std::arg(acc) / (kTwoPi * zc_length * rx.sample_time_s);
}

struct KalmanTrack {
    std::vector<double> estimates;
    double final_var = 0.0;
};

/// Scalar random-walk Kalman filter: predict P += q, then update with
/// gain P / (P + r) for each measurement.
inline KalmanTrack kalman_track(std::span<const double> measurements, double q, double r, double init,
                                double init_var)
{
    if (!(q > 0.0) || !(r > 0.0)) throw DomainError("kalman_track: q and r must be > 0");
    KalmanTrack out;
    out.estimates.reserve(measurements.size());
    double x = init;
    double p = init_var;
    for (double z : measurements) {
        p += q;
        const double gain = p / (p + r);
        x += gain * (z - x);
        p *= (1.0 - gain);
        out.estimates.push_back(x);
    }
    out.final_var = p;
    return out;
}

// arg(<rx, known>) in (-pi, pi].
inline double estimate_phase(const ComplexBaseband& rx, const ComplexBaseband& known)
{
    if (rx.size() != known.size() || rx.size() == 0)
        throw std::invalid_argument("estimate_phase: received and known preambles differ in length");
    cplx acc{0.0, 0.0};
    for (std::size_t n = 0; n < rx.size(); ++n) acc += rx.samples[n] * std::conj(known.samples[n]);
    return wrap_phase(std::arg(acc));
}

/// Two identical n_fb-sample preambles, the second rotated by phi.
inline ComplexBaseband encode_feedback(double phi, int n_fb, double sample_time_s = 1.0)
{
    if (n_fb < 1) throw DomainError("encode_feedback: n_fb must be >= 1");
    ComplexBaseband tx{std::vector<cplx>(2 * static_cast<std::size_t>(n_fb)), sample_time_s};
    const cplx turn = std::polar(1.0, phi);
    for (int n = 0; n < n_fb; ++n) {
        // chirp base sequence, unit modulus for any length
        const cplx base = std::polar(1.0, std::numbers::pi * n * static_cast<double>(n) / n_fb);
        tx.samples[n] = base;
        tx.samples[n + n_fb] = base * turn;
    }
    return tx;
}

// Correlates the second preamble against the first and takes the angle.
inline double decode_feedback(const ComplexBaseband& rx, int n_fb)
{
    if (n_fb < 1) throw DomainError("decode_feedback: n_fb must be >= 1");
    if (rx.size() < 2 * static_cast<std::size_t>(n_fb))
        throw std::invalid_argument("decode_feedback: burst shorter than two feedback preambles");
    cplx acc{0.0, 0.0};
    for (int n = 0; n < n_fb; ++n) acc += rx.samples[n + n_fb] * std::conj(rx.samples[n]);
    return wrap_phase(std::arg(acc));
}

struct TrialOptions {
    // Skip all noise and run the estimators on clean waveforms.
    bool noiseless = false;
};

struct TrialOutcome {
    std::vector<double> freq_errors_hz;   // f_hat_n - f_n after the Kalman update
    std::vector<double> phase_errors_rad; // combining phase error at t_e, in (-pi, pi]
    double realized_gain = 0.0;
};

inline double combining_gain(std::span<const double> phase_errors)
{
    double re = 0.0, im = 0.0;
    for (double phi : phase_errors) {
        re += std::cos(phi);
        im += std::sin(phi);
    }
    const double n = static_cast<double>(phase_errors.size());
    return std::clamp((re * re + im * im) / n, 0.0, n);
}

/// One pass of the destination-led protocol for every radio, with the
/// preamble lengths in cfg.preambles.
///
/// Each slave's Kalman filter enters the cycle in steady state: the true
/// offset relative to its prediction is drawn from the steady predicted
/// covariance P+ = P + q, and is then updated with a waveform-level ZC
/// measurement whose modelled noise is freq_est_variance. The slave's
/// uplink phase preamble is estimated by the master, and the estimate is
/// returned through the differential feedback preamble on the downlink.
inline TrialOutcome run_protocol_trial(const ProtocolConfig& cfg, double snr_prebf, double snr_dr, Rng& rng,
                                       TrialOptions options = {})
{
    validate(cfg);
    if (!(snr_prebf > 0.0) || !(snr_dr > 0.0)) throw DomainError("run_protocol_trial: SNRs must be > 0");

    const auto& p = cfg.preambles;
    const double ts = cfg.sample_time_s;
    const double meas_var =
        options.noiseless ? 0.0 : freq_est_variance(snr_dr, p.zc_repeats, cfg.zc_length, ts);
    const double predicted_var = kalman_steady_variance(meas_var, cfg.kf_process_var) + cfg.kf_process_var;
    const double ambiguity_hz = 1.0 / (2.0 * cfg.zc_length * ts);
    if (6.0 * std::sqrt(predicted_var) >= ambiguity_hz)
        throw DomainError("run_protocol_trial: kf_process_var implies frequency offsets beyond the ZC "
                          "estimator's unambiguous range");
    const double gain = predicted_var / (predicted_var + meas_var);

    ComplexBaseband zc = zc_sequence(cfg.zc_length, 1, ts);
    ComplexBaseband sync{{}, ts};
    sync.samples.reserve(zc.size() * p.zc_repeats);
    for (int k = 0; k < p.zc_repeats; ++k) sync.samples.insert(sync.samples.end(), zc.samples.begin(), zc.samples.end());

    TrialOutcome out;
    out.freq_errors_hz.resize(cfg.n_radios);
    out.phase_errors_rad.resize(cfg.n_radios);
    for (int radio = 0; radio < cfg.n_radios; ++radio) {
        const double true_freq = rng.normal(0.0, std::sqrt(predicted_var));
        const double true_phase = rng.uniform_phase();

        // Synchronization: downlink ZC repetitions, Kalman prediction is 0.
        ComplexBaseband rx_sync = sync;
        rotate(rx_sync, true_freq, rng.uniform_phase());
        if (!options.noiseless) add_noise(rx_sync, snr_dr, rng);
        const double measured = estimate_freq_offset(rx_sync, cfg.zc_length, p.zc_repeats);
        const double freq_est = gain * measured;

        // Channel estimation at the master on the uplink.
        const ComplexBaseband known = pseudorandom_preamble(p.phase_preamble, rng, ts);
        ComplexBaseband rx_ph = known;
        rotate(rx_ph, 0.0, true_phase);
        if (!options.noiseless) add_noise(rx_ph, snr_prebf, rng);
        const double master_phase = estimate_phase(rx_ph, known);

        // Feedback of the master's estimate on the downlink.
        ComplexBaseband rx_fb = encode_feedback(master_phase, p.feedback_preamble, ts);
        rotate(rx_fb, 0.0, rng.uniform_phase());
        if (!options.noiseless) add_noise(rx_fb, snr_dr, rng);
        const double slave_phase = decode_feedback(rx_fb, p.feedback_preamble);

        const double freq_residual = true_freq - freq_est;
        out.freq_errors_hz[radio] = -freq_residual;
        out.phase_errors_rad[radio] =
            wrap_phase(kTwoPi * freq_residual * cfg.eval_time_s + (true_phase - slave_phase));
    }
    out.realized_gain = combining_gain(out.phase_errors_rad);
    return out;
}

inline TrialOutcome run_protocol_trial(const ProtocolConfig& cfg, const LinkBudget& link, double distance_m,
                                       Rng& rng, TrialOptions options = {})
{
    const double snr = prebf_snr(distance_m, link);
    return run_protocol_trial(cfg, snr, downlink_snr(snr, link), rng, options);
}

// Independent trials; trial t draws from stream t of `seed`.
inline std::vector<TrialOutcome> run_protocol_trials(const ProtocolConfig& cfg, double snr_prebf, double snr_dr,
                                                     std::size_t trials, std::uint64_t seed, unsigned threads = 1,
                                                     TrialOptions options = {})
{
    std::vector<TrialOutcome> out(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng rng(seed, t);
        out[t] = run_protocol_trial(cfg, snr_prebf, snr_dr, rng, options);
    });
    return out;
}

} // namespace dbfrange::sim

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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "dbfrange/signal_sim.hpp"

using namespace dbfrange;
using namespace dbfrange::sim;
using Catch::Approx;

namespace {

double sample_variance(const std::vector<double>& v, bool about_zero = false)
{
    double mean = 0.0;
    if (!about_zero) {
        for (double x : v) mean += x;
        mean /= v.size();
    }
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / (v.size() - (about_zero ? 0 : 1));
}

ComplexBaseband repeated(const ComplexBaseband& x, int times)
{
    ComplexBaseband out{{}, x.sample_time_s};
    for (int k = 0; k < times; ++k) out.samples.insert(out.samples.end(), x.samples.begin(), x.samples.end());
    return out;
}

} // namespace

TEST_CASE("Zadoff-Chu sequences", "[signal_sim]")
{
    const auto z3 = zc_sequence(3, 1);
    REQUIRE(z3.size() == 3);
    CHECK(std::arg(z3.samples[0]) == Approx(0.0).margin(1e-12));
    CHECK(std::arg(z3.samples[1]) == Approx(-2 * std::numbers::pi / 3).margin(1e-12));
    CHECK(std::arg(z3.samples[2]) == Approx(0.0).margin(1e-12));

    for (int m : {63, 64}) {
        const auto z = zc_sequence(m, 1);
        for (const auto& s : z.samples) CHECK(std::abs(s) == Approx(1.0).epsilon(1e-12));
        // zero cyclic autocorrelation at every nonzero lag
        for (int lag = 1; lag < m; ++lag) {
            std::complex<double> acc{};
            for (int n = 0; n < m; ++n) acc += z.samples[(n + lag) % m] * std::conj(z.samples[n]);
            CHECK(std::abs(acc) < 1e-9 * m);
        }
    }
}

TEST_CASE("noiseless estimators are exact", "[signal_sim]")
{
    const double ts = 1e-6;
    const auto zc = zc_sequence(64, 1, ts);
    for (double f : {-7000.0, -120.5, 0.0, 333.3, 7000.0}) {
        auto rx = repeated(zc, 4);
        rotate(rx, f, 0.9);
        CHECK(estimate_freq_offset(rx, 64, 4) == Approx(f).margin(1e-6));
    }

    Rng rng(5);
    const auto known = pseudorandom_preamble(50, rng, ts);
    for (double phi : {-3.0, -0.4, 0.0, 1.2, 3.1}) {
        auto rx = known;
        rotate(rx, 0.0, phi);
        CHECK(estimate_phase(rx, known) == Approx(phi).margin(1e-12));

        for (int n_fb : {1, 7, 70}) {
            auto fb = encode_feedback(phi, n_fb, ts);
            CHECK(fb.size() == static_cast<std::size_t>(2 * n_fb));
            rotate(fb, 0.0, 2.5); // channel phase common to both halves cancels
            CHECK(decode_feedback(fb, n_fb) == Approx(phi).margin(1e-12));
        }
    }
}

TEST_CASE("estimator variances agree with the closed forms", "[signal_sim]")
{
    const double ts = 1e-6;
    const int trials = 10000;
    const double snr = db_to_linear(5.0);
    Rng rng(11);

    std::vector<double> f_err, ph_err, fb_err;
    const auto zc = zc_sequence(64, 1, ts);
    const auto sync = repeated(zc, 3);
    for (int t = 0; t < trials; ++t) {
        auto rx = sync;
        rotate(rx, 500.0, rng.uniform_phase());
        add_noise(rx, snr, rng);
        f_err.push_back(estimate_freq_offset(rx, 64, 3) - 500.0);

        const auto known = pseudorandom_preamble(40, rng, ts);
        auto rp = known;
        rotate(rp, 0.0, 0.3);
        add_noise(rp, snr, rng);
        ph_err.push_back(estimate_phase(rp, known) - 0.3);

        auto fb = encode_feedback(-0.7, 30, ts);
        rotate(fb, 0.0, rng.uniform_phase());
        add_noise(fb, snr, rng);
        fb_err.push_back(wrap_phase(decode_feedback(fb, 30) + 0.7));
    }
    CHECK(sample_variance(f_err) == Approx(freq_est_variance(snr, 3, 64, ts)).epsilon(0.1));
    CHECK(sample_variance(ph_err) == Approx(phase_est_variance(snr, 40)).epsilon(0.1));
    CHECK(sample_variance(fb_err) == Approx(feedback_variance(snr, 30)).epsilon(0.1));

    // unbiased: means within 4 standard errors of 0
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / v.size();
    };
    CHECK(std::abs(mean(f_err)) < 4 * std::sqrt(sample_variance(f_err) / trials));
    CHECK(std::abs(mean(ph_err)) < 4 * std::sqrt(sample_variance(ph_err) / trials));
    CHECK(std::abs(mean(fb_err)) < 4 * std::sqrt(sample_variance(fb_err) / trials));
}

TEST_CASE("low-SNR errors are not below the closed forms", "[signal_sim]")
{
    // Threshold effects only add variance; the wrapped error stays below pi^2 / 3.
    for (double snr_db : {-5.0, -10.0}) {
        const double snr = db_to_linear(snr_db);
        const int len = snr_db > -6.0 ? 10 : 40;
        Rng rng(12);
        std::vector<double> ph_err, fb_err;
        for (int t = 0; t < 10000; ++t) {
            const auto known = pseudorandom_preamble(len, rng);
            auto rp = known;
            add_noise(rp, snr, rng);
            ph_err.push_back(estimate_phase(rp, known));

            auto fb = encode_feedback(0.0, len);
            add_noise(fb, snr, rng);
            fb_err.push_back(decode_feedback(fb, len));
        }
        INFO(snr_db << " dB");
        CHECK(sample_variance(ph_err, true) >= 0.8 * phase_est_variance(snr, len));
        CHECK(sample_variance(fb_err, true) >= 0.8 * feedback_variance(snr, len));
    }
}

TEST_CASE("Kalman track converges to the steady-state variance", "[signal_sim]")
{
    const double q = 1.0, r = 1e4;
    Rng rng(3);
    std::vector<double> z(5000);
    double truth = 0.0;
    for (auto& v : z) {
        truth += rng.normal(0.0, std::sqrt(q));
        v = truth + rng.normal(0.0, std::sqrt(r));
    }
    const auto track = kalman_track(z, q, r, 0.0, 1e6);
    CHECK(track.estimates.size() == z.size());
    CHECK(track.final_var == Approx(kalman_steady_variance(r, q)).epsilon(1e-6));
    CHECK_THROWS_AS(kalman_track(z, 0.0, r, 0.0, 1.0), DomainError);
}

TEST_CASE("protocol trials", "[signal_sim]")
{
    ProtocolConfig cfg;
    const double pre = db_to_linear(10.0);
    const double dr = db_to_linear(25.0);

    SECTION("noiseless trial gives the full N gain")
    {
        Rng rng(1);
        const auto out = run_protocol_trial(cfg, pre, dr, rng, {.noiseless = true});
        CHECK(out.realized_gain == Approx(cfg.n_radios).epsilon(1e-6));
        for (double e : out.phase_errors_rad) CHECK(std::abs(e) < 1e-6);
    }

    SECTION("a single radio always has gain 1")
    {
        cfg.n_radios = 1;
        Rng rng(2);
        CHECK(run_protocol_trial(cfg, pre, dr, rng).realized_gain == Approx(1.0).epsilon(1e-12));
    }

    SECTION("error variances match the model")
    {
        const auto trials = run_protocol_trials(cfg, pre, dr, 4000, 9, 2);
        std::vector<double> f, ph;
        for (const auto& t : trials) {
            for (double e : t.freq_errors_hz) f.push_back(e);
            for (double e : t.phase_errors_rad) {
                CHECK(e > -std::numbers::pi);
                CHECK(e <= std::numbers::pi);
                ph.push_back(e);
            }
        }
        const auto model = combining_phase_variance(cfg, pre, dr);
        CHECK(sample_variance(f, true) == Approx(model.freq_track_var).epsilon(0.1));
        CHECK(sample_variance(ph, true) == Approx(model.combining_var).epsilon(0.1));
    }

    SECTION("trials do not depend on the thread count")
    {
        const auto a = run_protocol_trials(cfg, pre, dr, 64, 4, 1);
        const auto b = run_protocol_trials(cfg, pre, dr, 64, 4, 3);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].phase_errors_rad == b[i].phase_errors_rad);
    }
}

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

#include <cstddef>
#include <iterator>
#include <limits>
#include <string>

#include "dbfrange/errors.hpp"
#include "dbfrange/variance_models.hpp"

namespace dbfrange {

struct PreambleAllocation {
    PreambleLengths lengths;
    double achieved_variance = 0.0; // sigma_e^2 at the allocation
    long overhead_used = 0;
};

// Every (N_ZC, N_ph, N_fb) that fits the overhead budget, in lexicographic
// order. The allocation fields of the config are ignored.
class FeasibleTriples {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = PreambleLengths;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const FeasibleTriples* owner, PreambleLengths at) : owner_(owner), at_(at) {}

        const PreambleLengths& operator*() const { return at_; }
        iterator& operator++()
        {
            at_ = owner_->next(at_);
            return *this;
        }
        iterator operator++(int)
        {
            auto copy = *this;
            ++*this;
            return copy;
        }
        bool operator==(const iterator& other) const { return at_ == other.at_; }

    private:
        const FeasibleTriples* owner_ = nullptr;
        PreambleLengths at_{0, 0, 0};
    };

    explicit FeasibleTriples(const ProtocolConfig& cfg) : cfg_(cfg)
    {
        cfg_.preambles = {2, 1, 1};
    }

    iterator begin() const
    {
        return fits({2, 1, 1}) ? iterator(this, {2, 1, 1}) : end();
    }
    iterator end() const { return iterator(this, kEnd); }

    // Number of feasible triples, counted without visiting each one.
    long long count() const
    {
        long long total = 0;
        for (int zc = 2; fits({zc, 1, 1}); ++zc) {
            const long per_radio = per_radio_budget(zc);
            const long fb_factor = cfg_.feedback_slot_factor();
            for (long ph = 1; ph + fb_factor <= per_radio; ++ph)
                total += (per_radio - ph) / fb_factor;
        }
        return total;
    }

private:
    static constexpr PreambleLengths kEnd{-1, -1, -1};

    bool fits(const PreambleLengths& p) const
    {
        return overhead_samples(cfg_, p) <= cfg_.overhead_budget;
    }

    // Samples left for one radio's phase + feedback slot at a given N_ZC.
    long per_radio_budget(int zc) const
    {
        const long rest = cfg_.overhead_budget - cfg_.guards() - static_cast<long>(zc) * cfg_.zc_length;
        return rest < 0 ? -1 : rest / cfg_.n_radios;
    }

    PreambleLengths next(PreambleLengths p) const
    {
        ++p.feedback_preamble;
        if (fits(p)) return p;
        p.feedback_preamble = 1;
        ++p.phase_preamble;
        if (fits(p)) return p;
        p.phase_preamble = 1;
        ++p.zc_repeats;
        if (fits(p)) return p;
        return kEnd;
    }

    ProtocolConfig cfg_;
};

inline FeasibleTriples enumerate_feasible(const ProtocolConfig& cfg) { return FeasibleTriples(cfg); }

/// Minimises sigma_e^2 over the integer preamble lengths subject to the
/// overhead budget. sigma_e^2 is strictly decreasing in N_fb, so for each
/// (N_ZC, N_ph) only the largest feasible N_fb is evaluated. Ties go to the
/// lexicographically smallest (N_ZC, N_ph, N_fb).
inline PreambleAllocation optimize_preambles(const ProtocolConfig& cfg, double snr_prebf, double snr_dr)
{
    const long minimal = minimal_overhead(cfg);
    if (cfg.overhead_budget < minimal) {
        throw InfeasibleError("overhead budget " + std::to_string(cfg.overhead_budget) +
                                  " is below the minimal feasible overhead " + std::to_string(minimal),
                              minimal);
    }

    const long fb_factor = cfg.feedback_slot_factor();
    PreambleAllocation best;
    best.achieved_variance = std::numeric_limits<double>::infinity();

    for (int zc = 2;; ++zc) {
        const long rest = cfg.overhead_budget - cfg.guards() - static_cast<long>(zc) * cfg.zc_length;
        if (rest < 0) break;
        const long per_radio = rest / cfg.n_radios;
        if (per_radio < 1 + fb_factor) break;
        for (long ph = 1; ph + fb_factor <= per_radio; ++ph) {
            const PreambleLengths p{zc, static_cast<int>(ph), static_cast<int>((per_radio - ph) / fb_factor)};
            const double v = combining_phase_variance(cfg, p, snr_prebf, snr_dr).combining_var;
            if (v < best.achieved_variance) {
                best.lengths = p;
                best.achieved_variance = v;
            }
        }
    }
    best.overhead_used = overhead_samples(cfg, best.lengths);
    return best;
}

} // namespace dbfrange

// Copyright 2026 The hqrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HQRATE_MCSIM_H
#define HQRATE_MCSIM_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqrate/chain.h"

namespace hqrate {

enum class Protocol {
    Parallel,      ///< 2^n segments, done when all have succeeded
    Multiplexed,   ///< 2 columns x r rows, any row may serve a column
    ParallelRows,  ///< 2 columns x r rows, both successes in one row
    PurifyFirst,   ///< purification of elementary pairs, then n swap levels
    PurifyLast,    ///< two full chains, one purification at the end
};

enum class PurifyVariant {
    Upper,      ///< wait for every pair, purify all columns, regenerate failures
    Lower,      ///< generate once, retry failed purifications on the same pairs
    Realistic,  ///< each column purifies as soon as it holds two pairs
};

struct SimConfig {
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    Protocol protocol = Protocol::Parallel;
    int nesting_levels = 0;
    int rows = 1;
    PurifyVariant variant = PurifyVariant::Realistic;
    double p0 = 1.0;
    /// Purification success probability per round (one entry per round).
    std::vector<double> p1;
    /// Slots consumed by one purification attempt (classical confirmation).
    int purification_slots = 1;
    bool histogram = false;
    /// Worker threads; 0 picks the hardware concurrency. Never affects output.
    unsigned threads = 0;

    /// Throws ConfigError for deadlocks (p = 0) and unsupported shapes.
    void validate() const;
};

struct SimEstimate {
    double mean_slots = 0;
    double std_error_slots = 0;
    std::uint64_t trials = 0;
    std::uint64_t min_slots = 0;
    std::uint64_t max_slots = 0;
    /// slot count -> number of trials; filled only when requested.
    std::map<std::uint64_t, std::uint64_t> histogram;
};

/// Slotted Monte Carlo simulator. Every trial draws from its own generator
/// keyed by (seed, trial index) and slot totals are aggregated as exact
/// integers, so results are bit-identical for any thread count.
class Simulator {
   public:
    explicit Simulator(SimConfig config);
    const SimConfig &config() const {
        return config_;
    }
    SimEstimate run() const;
    /// Slot count of a single trial.
    std::uint64_t run_trial(std::uint64_t trial_index) const;

   private:
    SimConfig config_;
};

SimEstimate simulate(const SimConfig &config);

/// Exact expected slot count for the configured process, when one is known:
/// parallel, multiplexed and parallel-rows always; the lower variant;
/// single-round realistic/upper at n = 0; purify-last.
std::optional<double> closed_form_mean(const SimConfig &config);

/// Runs the realistic purify-first (or last-level / multiplexed) process and
/// records the fidelity of the delivered end-to-end pair in every trial.
/// Timing is random, the maps are not, so all entries equal
/// final_fidelity(F0, s). p0 only shapes the generation timing.
std::vector<double> simulate_chain_fidelity(Fidelity F0, const Strategy &s, std::uint64_t trials,
                                            std::uint64_t seed, double p0 = 0.5);

std::string to_string(Protocol p);
std::string to_string(PurifyVariant v);

}  // namespace hqrate

#endif

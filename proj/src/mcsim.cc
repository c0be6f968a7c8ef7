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

#include "hqrate/mcsim.h"

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <string>
#include <thread>

#include "hqrate/errors.h"
#include "hqrate/rng.h"
#include "hqrate/waiting.h"

namespace hqrate {

namespace {

using Slots = std::uint64_t;
__extension__ typedef unsigned __int128 Wide;

Slots max_of_geometrics(TrialRng &rng, std::uint64_t count, double p) {
    Slots worst = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        worst = std::max(worst, rng.geometric(p));
    }
    return worst;
}

// A column produces a purified pair of the given round by purifying two
// pairs of the round below as soon as both exist; failure destroys both.
Slots realistic_column(TrialRng &rng, const SimConfig &c, std::size_t round) {
    if (round == 0) {
        return rng.geometric(c.p0);
    }
    Slots t = 0;
    while (true) {
        const Slots a = realistic_column(rng, c, round - 1);
        const Slots b = realistic_column(rng, c, round - 1);
        t += std::max(a, b) + static_cast<Slots>(c.purification_slots);
        if (rng.bernoulli(c.p1[round - 1])) {
            return t;
        }
    }
}

Slots purify_first_trial(TrialRng &rng, const SimConfig &c) {
    const std::uint64_t columns = segments_for_level(c.nesting_levels);
    const auto slots = static_cast<Slots>(c.purification_slots);
    const double p1 = c.p1.front();
    switch (c.variant) {
        case PurifyVariant::Lower: {
            const Slots generation = max_of_geometrics(rng, 2 * columns, c.p0);
            return generation + slots * max_of_geometrics(rng, columns, p1);
        }
        case PurifyVariant::Upper: {
            std::uint64_t pending = columns;
            Slots t = 0;
            while (pending > 0) {
                t += max_of_geometrics(rng, 2 * pending, c.p0) + slots;
                std::uint64_t failed = 0;
                for (std::uint64_t i = 0; i < pending; ++i) {
                    failed += rng.bernoulli(p1) ? 0 : 1;
                }
                pending = failed;
            }
            return t;
        }
        case PurifyVariant::Realistic: {
            Slots worst = 0;
            for (std::uint64_t i = 0; i < columns; ++i) {
                worst = std::max(worst, realistic_column(rng, c, c.p1.size()));
            }
            return worst;
        }
    }
    return 0;
}

Slots purify_last_trial(TrialRng &rng, const SimConfig &c) {
    const std::uint64_t pairs = 2 * segments_for_level(c.nesting_levels);
    Slots t = 0;
    do {
        t += max_of_geometrics(rng, pairs, c.p0) + static_cast<Slots>(c.purification_slots);
    } while (!rng.bernoulli(c.p1.front()));
    return t;
}

struct Accumulator {
    Wide sum = 0;
    Wide sum_sq = 0;
    Slots min = ~Slots{0};
    Slots max = 0;
    std::map<Slots, std::uint64_t> histogram;

    void add(Slots s, bool keep_histogram) {
        sum += s;
        sum_sq += static_cast<Wide>(s) * s;
        min = std::min(min, s);
        max = std::max(max, s);
        if (keep_histogram) {
            ++histogram[s];
        }
    }
    void merge(const Accumulator &o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        for (const auto &[k, v] : o.histogram) {
            histogram[k] += v;
        }
    }
};

}  // namespace

void SimConfig::validate() const {
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (!(p0 > 0 && p0 <= 1)) {
        throw ConfigError("p0 must lie in (0, 1]; p0 = 0 never completes");
    }
    for (double p : p1) {
        if (!(p > 0 && p <= 1)) {
            throw ConfigError("p1 must lie in (0, 1]; p1 = 0 never completes");
        }
    }
    if (nesting_levels < 0 || nesting_levels > 20) {
        throw ConfigError("nesting level must lie in [0, 20]");
    }
    if (rows < 1) {
        throw ConfigError("rows must be at least 1");
    }
    if (purification_slots < 0) {
        throw ConfigError("purification slots must be nonnegative");
    }
    const bool purifies = protocol == Protocol::PurifyFirst || protocol == Protocol::PurifyLast;
    if (purifies && p1.empty()) {
        throw ConfigError("purification protocols need p1");
    }
    if (protocol == Protocol::PurifyLast && p1.size() != 1) {
        throw ConfigError("purify-last takes exactly one round");
    }
    if (protocol == Protocol::PurifyLast && nesting_levels < 1) {
        throw ConfigError("purify-last needs n >= 1");
    }
    if (protocol == Protocol::PurifyFirst && variant != PurifyVariant::Realistic && p1.size() != 1) {
        throw ConfigError("upper and lower variants are defined for one round");
    }
}

Simulator::Simulator(SimConfig config) : config_(std::move(config)) {
    config_.validate();
}

std::uint64_t Simulator::run_trial(std::uint64_t trial_index) const {
    const SimConfig &c = config_;
    TrialRng rng(c.seed, trial_index);
    switch (c.protocol) {
        case Protocol::Parallel:
            return max_of_geometrics(rng, segments_for_level(c.nesting_levels), c.p0);
        case Protocol::Multiplexed: {
            Slots worst = 0;
            for (int col = 0; col < 2; ++col) {
                Slots first = ~Slots{0};
                for (int r = 0; r < c.rows; ++r) {
                    first = std::min(first, rng.geometric(c.p0));
                }
                worst = std::max(worst, first);
            }
            return worst;
        }
        case Protocol::ParallelRows: {
            Slots best = ~Slots{0};
            for (int r = 0; r < c.rows; ++r) {
                best = std::min(best, max_of_geometrics(rng, 2, c.p0));
            }
            return best;
        }
        case Protocol::PurifyFirst:
            return purify_first_trial(rng, c);
        case Protocol::PurifyLast:
            return purify_last_trial(rng, c);
    }
    return 0;
}

SimEstimate Simulator::run() const {
    const SimConfig &c = config_;
    unsigned workers = c.threads != 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, c.trials));

    std::vector<Accumulator> partial(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = c.trials * w / workers;
        const std::uint64_t end = c.trials * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            partial[w].add(run_trial(i), c.histogram);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    Accumulator total;
    for (const auto &a : partial) {
        total.merge(a);
    }

    SimEstimate est;
    est.trials = c.trials;
    const long double n = static_cast<long double>(c.trials);
    est.mean_slots = static_cast<double>(static_cast<long double>(total.sum) / n);
    if (c.trials > 1) {
        // n * sum(x^2) - (sum x)^2 is exact in 128-bit integers.
        const Wide spread = total.sum_sq * c.trials - total.sum * total.sum;
        const long double variance = static_cast<long double>(spread) / (n * (n - 1));
        est.std_error_slots = static_cast<double>(std::sqrt(variance / n));
    }
    est.min_slots = total.min;
    est.max_slots = total.max;
    est.histogram = std::move(total.histogram);
    return est;
}

SimEstimate simulate(const SimConfig &config) {
    return Simulator(config).run();
}

std::optional<double> closed_form_mean(const SimConfig &c) {
    c.validate();
    const SuccessProb p0(c.p0);
    const double slots = c.purification_slots;
    switch (c.protocol) {
        case Protocol::Parallel:
            return z_stable(segments_for_level(c.nesting_levels), p0);
        case Protocol::Multiplexed:
            return z_multiplexed(c.rows, p0.failure());
        case Protocol::ParallelRows:
            return c.rows == 2 ? z_parallel_rows_1_2(p0.failure()) : z_parallel_rows(c.rows, p0.failure());
        case Protocol::PurifyFirst: {
            const std::uint64_t columns = segments_for_level(c.nesting_levels);
            if (c.p1.size() != 1) {
                return std::nullopt;
            }
            const SuccessProb p1(c.p1.front());
            if (c.variant == PurifyVariant::Lower) {
                return z_stable(2 * columns, p0) + slots * z_stable(columns, p1);
            }
            if (c.nesting_levels == 0) {
                return (z_stable(2, p0) + slots) / p1.value();
            }
            return std::nullopt;
        }
        case Protocol::PurifyLast: {
            const std::uint64_t pairs = 2 * segments_for_level(c.nesting_levels);
            return (z_stable(pairs, p0) + slots) / c.p1.front();
        }
    }
    return std::nullopt;
}

std::vector<double> simulate_chain_fidelity(Fidelity F0, const Strategy &s, std::uint64_t trials,
                                            std::uint64_t seed, double p0) {
    // Surfaces domain exits with the step index before any sampling.
    const Fidelity expected = final_fidelity(F0, s);
    (void)expected;
    if (!(p0 > 0 && p0 <= 1)) {
        throw ConfigError("p0 must lie in (0, 1]");
    }
    const GateQuality gq = s.gate_quality;

    struct Pair {
        Slots ready;
        Fidelity fidelity;
    };
    // Purifies two pairs of the round below until one attempt succeeds.
    auto purified = [&](auto &self, TrialRng &rng, int round) -> Pair {
        if (round == 0) {
            return {rng.geometric(p0), F0};
        }
        Slots t = 0;
        while (true) {
            const Pair a = self(self, rng, round - 1);
            const Pair b = self(self, rng, round - 1);
            t += std::max(a.ready, b.ready) + 1;
            const PurificationOutcome out = purify(a.fidelity, gq);
            if (rng.bernoulli(out.success_probability)) {
                return {t, out.output_fidelity};
            }
        }
    };
    // Connects neighbouring columns level by level. The swap map takes one
    // fidelity, so both inputs of every swap must agree.
    auto connect = [&](std::vector<Fidelity> level) {
        while (level.size() > 1) {
            std::vector<Fidelity> next;
            next.reserve(level.size() / 2);
            for (std::size_t j = 0; j + 1 < level.size(); j += 2) {
                if (!(level[j] == level[j + 1])) {
                    throw std::logic_error("swapped pairs carry different fidelities");
                }
                next.push_back(swap(level[j], gq));
            }
            level = std::move(next);
        }
        return level.front();
    };

    const std::uint64_t columns = segments_for_level(s.nesting_levels);
    std::vector<double> out;
    out.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialRng rng(seed, i);
        if (s.placement == PurifPlacement::LastLevel) {
            while (true) {
                const Fidelity first = connect(std::vector<Fidelity>(columns, F0));
                const Fidelity second = connect(std::vector<Fidelity>(columns, F0));
                if (!(first == second)) {
                    throw std::logic_error("parallel chains carry different fidelities");
                }
                const PurificationOutcome r = purify(first, gq);
                if (rng.bernoulli(r.success_probability)) {
                    out.push_back(r.output_fidelity.value());
                    break;
                }
            }
            continue;
        }
        std::vector<Fidelity> level;
        level.reserve(columns);
        for (std::uint64_t col = 0; col < columns; ++col) {
            level.push_back(purified(purified, rng, s.purif_rounds).fidelity);
        }
        out.push_back(connect(std::move(level)).value());
    }
    return out;
}

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Parallel:
            return "parallel";
        case Protocol::Multiplexed:
            return "multiplexed";
        case Protocol::ParallelRows:
            return "parallel-rows";
        case Protocol::PurifyFirst:
            return "purify-first";
        case Protocol::PurifyLast:
            return "purify-last";
    }
    return "unknown";
}

std::string to_string(PurifyVariant v) {
    switch (v) {
        case PurifyVariant::Upper:
            return "upper";
        case PurifyVariant::Lower:
            return "lower";
        case PurifyVariant::Realistic:
            return "realistic";
    }
    return "unknown";
}

}  // namespace hqrate

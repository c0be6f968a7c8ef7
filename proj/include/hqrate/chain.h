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

#ifndef HQRATE_CHAIN_H
#define HQRATE_CHAIN_H

#include <string>
#include <vector>

#include "hqrate/channel.h"
#include "hqrate/gates.h"
#include "hqrate/waiting.h"

namespace hqrate {

enum class PurifPlacement {
    FirstLevel,  ///< purify elementary pairs, then swap
    LastLevel,   ///< swap two full chains, then purify once at the end
};

/// A complete repeater protocol over 2^n segments.
///
/// rows > 1 selects spatial multiplexing (without purification): the closed
/// two-column form at n = 1, the effective-probability route otherwise.
/// LastLevel placement supports exactly one purification round.
struct Strategy {
    int nesting_levels = 0;
    int purif_rounds = 0;
    PurifPlacement placement = PurifPlacement::FirstLevel;
    int multiplex_rows = 1;
    GateQuality gate_quality{};
    AppendixDMode appendix_d_mode = AppendixDMode::TwoChains;

    /// Throws ConfigError on an unsupported combination.
    void validate() const;
    /// Number of fidelity maps applied end to end (purifications + swaps).
    int map_steps() const {
        return purif_rounds + nesting_levels;
    }
};

struct ScenarioResult {
    Fidelity initial_fidelity;
    Fidelity final_fidelity;
    double p0;
    std::vector<double> p1_per_round;
    double effective_p;
    double rate_hz;
    double waiting_time_s;
    /// Which rate expression produced rate_hz, e.g. "purified_first_level".
    std::string rate_model;
};

/// Result of pushing an initial fidelity through a strategy's maps without
/// throwing. When a lossy map leaves [1/2, 1], exited is set and the
/// remaining maps are not applied.
struct FidelityTrace {
    double final_fidelity = 0;
    std::vector<double> p1_per_round;
    bool exited = false;
    int exit_step = -1;
};
FidelityTrace trace_fidelity(double F0, const Strategy &s);

/// Applies the strategy's purification and swap maps to F0 (lossy versions
/// iff T < 1). Throws DomainExitError carrying the step index on exit.
Fidelity final_fidelity(Fidelity F0, const Strategy &s);

/// Largest final fidelity any initial fidelity in [1/2, 1] can reach.
double achievable_max_fidelity(const Strategy &s);

/// Initial fidelity F0 with |final_fidelity(F0, s) - F_target| < 1e-10.
/// Bisection on (1/2, 1); for lossy gates monotonicity is first checked on a
/// 1001-point grid and a grid bracket is used if it fails. Throws
/// UnreachableTargetError when F_target exceeds the achievable maximum.
Fidelity invert_fidelity(double F_target, const Strategy &s);

/// Full pipeline: invert for F0, elementary success probability at eta(L0),
/// per-round purification probabilities, effective probability and rate.
/// Throws ConfigError unless total length = 2^n x segment length.
ScenarioResult scenario_rate(double F_target, const Strategy &s, const ChannelParams &ch);

/// Pipeline values of a memoryless baseline (direct hop or relay).
struct BaselineResult {
    Fidelity initial_fidelity;
    double p0;
    double effective_p;
    double rate_hz;
};

/// Upper-bound rate for sending the pair over length_km in one hop:
/// P0(F, eta(L)) / (2L/c), or with one purification round
/// P0 P1 (2 - P0) / (3 - 2 P0) / (2L/c).
BaselineResult direct_transmission(double F_target, double length_km, bool with_one_purification,
                                   const ChannelParams &ch, GateQuality gq = GateQuality{});
double direct_transmission_rate(double F_target, double length_km, bool with_one_purification,
                                const ChannelParams &ch, GateQuality gq = GateQuality{});

/// Memoryless relay: all 2^n segments must succeed in the same slot,
/// P0^{2^n} / T0, with F0 inverted through n swaps.
BaselineResult relay(double F_target, int n, const ChannelParams &ch, GateQuality gq = GateQuality{});
double relay_rate(double F_target, int n, const ChannelParams &ch, GateQuality gq = GateQuality{});

}  // namespace hqrate

#endif

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

#include "hqrate/chain.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hqrate/errors.h"

namespace hqrate {

namespace {

constexpr double kInversionTolerance = 1e-10;
constexpr int kMonotonicityGridPoints = 1001;
constexpr double kBelowEverything = -std::numeric_limits<double>::infinity();

// Final fidelity as a function of F0, with domain exits mapped below every
// admissible target. Exits only occur at the low end of F0.
double forward_or_floor(double F0, const Strategy &s) {
    const FidelityTrace tr = trace_fidelity(F0, s);
    return tr.exited ? kBelowEverything : tr.final_fidelity;
}

double grid_point(int i) {
    return 0.5 + 0.5 * static_cast<double>(i) / (kMonotonicityGridPoints - 1);
}

Fidelity bisect(double lo, double hi, double F_target, const Strategy &s) {
    double best = hi;
    double best_residual = std::abs(forward_or_floor(hi, s) - F_target);
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double g = forward_or_floor(mid, s);
        const double residual = std::abs(g - F_target);
        if (residual < best_residual) {
            best = mid;
            best_residual = residual;
        }
        if (residual <= 1e-15) {
            break;
        }
        if (g < F_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (!(best_residual < kInversionTolerance)) {
        throw ConvergenceError("fidelity inversion for target " + std::to_string(F_target) + " stalled at residual " +
                               std::to_string(best_residual));
    }
    return Fidelity(best);
}

struct GridScan {
    std::vector<double> values;
    int argmax = 0;
    bool monotone = true;
};

GridScan scan_grid(const Strategy &s) {
    GridScan scan;
    scan.values.resize(kMonotonicityGridPoints);
    for (int i = 0; i < kMonotonicityGridPoints; ++i) {
        scan.values[i] = forward_or_floor(grid_point(i), s);
        if (scan.values[i] > scan.values[scan.argmax]) {
            scan.argmax = i;
        }
        if (i > 0 && scan.values[i] < scan.values[i - 1]) {
            scan.monotone = false;
        }
    }
    return scan;
}

double refine_max(const GridScan &scan, const Strategy &s) {
    double a = grid_point(std::max(scan.argmax - 1, 0));
    double b = grid_point(std::min(scan.argmax + 1, kMonotonicityGridPoints - 1));
    double best = scan.values[scan.argmax];
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = forward_or_floor(c, s);
    double fd = forward_or_floor(d, s);
    for (int iter = 0; iter < 200 && b - a > 1e-15; ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = forward_or_floor(c, s);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = forward_or_floor(d, s);
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

void require_target(double F_target) {
    if (!(F_target > 0.5 && F_target < 1)) {
        throw InvalidParameterError("target fidelity must lie in (0.5, 1), got " + std::to_string(F_target));
    }
}

void require_geometry(const Strategy &s, const ChannelParams &ch) {
    ch.validate();
    const double expected = std::ldexp(ch.segment_length_km, s.nesting_levels);
    if (std::abs(expected - ch.total_length_km) > 1e-9 * ch.total_length_km) {
        throw ConfigError("total length " + std::to_string(ch.total_length_km) + " km is not 2^" +
                          std::to_string(s.nesting_levels) + " x " + std::to_string(ch.segment_length_km) + " km");
    }
}

SuccessProb elementary_success(Fidelity F0, double eta) {
    const double p0 = success_probability(F0, eta);
    if (!(p0 > 0)) {
        throw ConvergenceError("elementary success probability underflows at F0 = " + std::to_string(F0.value()));
    }
    return SuccessProb(p0);
}

}  // namespace

void Strategy::validate() const {
    if (nesting_levels < 0 || nesting_levels > 30) {
        throw ConfigError("nesting levels must lie in [0, 30]");
    }
    if (purif_rounds < 0 || purif_rounds > 16) {
        throw ConfigError("purification rounds must lie in [0, 16]");
    }
    if (multiplex_rows < 1) {
        throw ConfigError("multiplexing rows must be at least 1");
    }
    if (multiplex_rows > 1 && purif_rounds != 0) {
        throw ConfigError("multiplexing is modeled without purification");
    }
    if (multiplex_rows > 1 && nesting_levels < 1) {
        throw ConfigError("multiplexing needs at least one nesting level");
    }
    if (placement == PurifPlacement::LastLevel && (purif_rounds != 1 || nesting_levels < 1)) {
        throw ConfigError("last-level placement supports exactly one purification round and n >= 1");
    }
}

FidelityTrace trace_fidelity(double F0, const Strategy &s) {
    FidelityTrace tr;
    double F = F0;
    int step = 0;
    const bool ideal = s.gate_quality.is_ideal();
    const double T = s.gate_quality.transmittance();

    auto exit_at = [&](double value) {
        tr.exited = true;
        tr.exit_step = step;
        tr.final_fidelity = value;
    };
    auto purify_once = [&]() {
        double out;
        double p;
        if (ideal) {
            const auto r = purify_ideal(Fidelity(F));
            out = r.output_fidelity.value();
            p = r.success_probability;
        } else {
            const auto r = raw::purify_lossy(F, T);
            out = r.fidelity;
            p = r.success;
        }
        if (!(p > 0) || !(out >= 0.5 && out <= 1)) {
            exit_at(out);
            return false;
        }
        tr.p1_per_round.push_back(p);
        F = out;
        ++step;
        return true;
    };
    auto swap_once = [&]() {
        const double out = ideal ? swap_ideal(Fidelity(F)).value() : raw::swap_lossy(F, T);
        if (!(out >= 0.5 && out <= 1)) {
            exit_at(out);
            return false;
        }
        F = out;
        ++step;
        return true;
    };

    if (s.placement == PurifPlacement::FirstLevel) {
        for (int k = 0; k < s.purif_rounds; ++k) {
            if (!purify_once()) return tr;
        }
        for (int n = 0; n < s.nesting_levels; ++n) {
            if (!swap_once()) return tr;
        }
    } else {
        for (int n = 0; n < s.nesting_levels; ++n) {
            if (!swap_once()) return tr;
        }
        for (int k = 0; k < s.purif_rounds; ++k) {
            if (!purify_once()) return tr;
        }
    }
    tr.final_fidelity = F;
    return tr;
}

Fidelity final_fidelity(Fidelity F0, const Strategy &s) {
    s.validate();
    const FidelityTrace tr = trace_fidelity(F0.value(), s);
    if (tr.exited) {
        throw DomainExitError("fidelity left [0.5, 1] at map step " + std::to_string(tr.exit_step) + " (value " +
                                  std::to_string(tr.final_fidelity) + ")",
                              tr.exit_step, tr.final_fidelity);
    }
    return Fidelity(tr.final_fidelity);
}

double achievable_max_fidelity(const Strategy &s) {
    s.validate();
    if (s.gate_quality.is_ideal()) {
        return 1.0;
    }
    return refine_max(scan_grid(s), s);
}

Fidelity invert_fidelity(double F_target, const Strategy &s) {
    require_target(F_target);
    s.validate();
    if (s.gate_quality.is_ideal()) {
        // Swap and purification maps are increasing on [1/2, 1].
        return bisect(0.5, 1.0, F_target, s);
    }

    const GridScan scan = scan_grid(s);
    const double sup = std::max(scan.values[scan.argmax], refine_max(scan, s));
    if (sup < F_target) {
        throw UnreachableTargetError(
            "target fidelity " + std::to_string(F_target) + " exceeds achievable maximum " + std::to_string(sup), sup);
    }
    if (scan.monotone && scan.values.back() >= F_target) {
        return bisect(0.5, 1.0, F_target, s);
    }
    // Bracket on the grid: first cell where the map crosses the target.
    for (int i = 0; i + 1 < kMonotonicityGridPoints; ++i) {
        if (scan.values[i] < F_target && scan.values[i + 1] >= F_target) {
            return bisect(grid_point(i), grid_point(i + 1), F_target, s);
        }
    }
    // Target lies between the best grid value and the refined maximum.
    const int i = std::max(scan.argmax - 1, 0);
    return bisect(grid_point(i), grid_point(std::min(scan.argmax + 1, kMonotonicityGridPoints - 1)), F_target, s);
}

ScenarioResult scenario_rate(double F_target, const Strategy &s, const ChannelParams &ch) {
    s.validate();
    require_geometry(s, ch);
    const Fidelity F0 = invert_fidelity(F_target, s);
    const FidelityTrace tr = trace_fidelity(F0.value(), s);
    const double eta = transmittance(ch.segment_length_km, ch.attenuation_length_km);
    const double T0 = base_slot_time(ch.segment_length_km, ch.signal_speed_m_per_s);
    const SuccessProb P0 = elementary_success(F0, eta);
    const int n = s.nesting_levels;

    double rate = 0;
    double effective = P0.value();
    std::string model;
    if (s.placement == PurifPlacement::LastLevel) {
        rate = rate_purify_at_end(n, P0, SuccessProb(tr.p1_per_round.at(0)), T0, s.appendix_d_mode);
        model = s.appendix_d_mode == AppendixDMode::TwoChains ? "purified_last_level_two_chains"
                                                              : "purified_last_level_verbatim_2n";
    } else if (s.multiplex_rows > 1) {
        effective = effective_p_multiplexed(P0, s.multiplex_rows).value();
        if (n == 1) {
            rate = 1.0 / (T0 * z_multiplexed(s.multiplex_rows, P0.failure()));
            model = "multiplexed_closed_form";
        } else {
            rate = rate_purified(n, SuccessProb(effective), T0);
            model = "multiplexed_effective_p";
        }
    } else if (s.purif_rounds > 0) {
        effective = effective_p_multi_round(P0, tr.p1_per_round).value();
        rate = rate_purified(n, SuccessProb(effective), T0);
        model = "purified_first_level";
    } else {
        rate = rate_parallel(n, P0, T0);
        model = "parallel";
    }
    return ScenarioResult{
        F0, Fidelity(tr.final_fidelity), P0.value(), tr.p1_per_round, effective, rate, 1.0 / rate, model,
    };
}

BaselineResult direct_transmission(double F_target, double length_km, bool with_one_purification,
                                   const ChannelParams &ch, GateQuality gq) {
    require_target(F_target);
    const double eta = transmittance(length_km, ch.attenuation_length_km);
    const double slot = base_slot_time(length_km, ch.signal_speed_m_per_s);
    if (!with_one_purification) {
        const double p0 = success_probability(Fidelity(F_target), eta);
        return {Fidelity(F_target), p0, p0, p0 / slot};
    }
    Strategy one_round;
    one_round.purif_rounds = 1;
    one_round.gate_quality = gq;
    const Fidelity F0 = invert_fidelity(F_target, one_round);
    const double p0 = success_probability(F0, eta);
    const double p1 = trace_fidelity(F0.value(), one_round).p1_per_round.at(0);
    const double effective = p0 * p1 * (2 - p0) / (3 - 2 * p0);
    return {F0, p0, effective, effective / slot};
}

double direct_transmission_rate(double F_target, double length_km, bool with_one_purification,
                                const ChannelParams &ch, GateQuality gq) {
    return direct_transmission(F_target, length_km, with_one_purification, ch, gq).rate_hz;
}

BaselineResult relay(double F_target, int n, const ChannelParams &ch, GateQuality gq) {
    if (n < 1) {
        throw ConfigError("a relay needs at least one nesting level");
    }
    Strategy swaps_only;
    swaps_only.nesting_levels = n;
    swaps_only.gate_quality = gq;
    require_geometry(swaps_only, ch);
    const Fidelity F0 = invert_fidelity(F_target, swaps_only);
    const double p0 = success_probability(F0, transmittance(ch.segment_length_km, ch.attenuation_length_km));
    const double T0 = base_slot_time(ch.segment_length_km, ch.signal_speed_m_per_s);
    const double all_at_once = std::exp(std::ldexp(1.0, n) * std::log(p0));
    return {F0, p0, all_at_once, all_at_once / T0};
}

double relay_rate(double F_target, int n, const ChannelParams &ch, GateQuality gq) {
    return relay(F_target, n, ch, gq).rate_hz;
}

}  // namespace hqrate

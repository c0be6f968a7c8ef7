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

#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "hqrate/errors.h"
#include "hqrate/sweep.h"
#include "hqrate/waiting.h"

namespace hqrate {

namespace {

constexpr double kDefaultSegmentKm = 20;
constexpr double kDefaultGateLoss = 1e-5;

ChannelParams channel(double total_km, double segment_km = kDefaultSegmentKm) {
    ChannelParams ch;
    ch.total_length_km = total_km;
    ch.segment_length_km = segment_km;
    return ch;
}

int levels_for(double total_km, double segment_km) {
    return static_cast<int>(std::lround(std::log2(total_km / segment_km)));
}

Strategy strategy(int n, int rounds, double gate_loss = kDefaultGateLoss) {
    Strategy s;
    s.nesting_levels = n;
    s.purif_rounds = rounds;
    s.gate_quality = GateQuality::from_loss(gate_loss);
    return s;
}

std::string km_label(double km) {
    std::ostringstream os;
    os << "L" << static_cast<long long>(km);
    return os.str();
}

std::string gate_loss_text(const GateQuality &gq) {
    return format_double(1 - gq.transmittance());
}

CsvRow row_from(const std::string &label, double F, const ScenarioResult &r) {
    return {label, F, r.initial_fidelity.value(), r.p0, r.effective_p, r.rate_hz, RowStatus::Ok};
}

CsvRow row_from(const std::string &label, double F, const BaselineResult &r) {
    return {label, F, r.initial_fidelity.value(), r.p0, r.effective_p, r.rate_hz, RowStatus::Ok};
}

// Curve with the same inversion and P0 as a strategy, but a different
// waiting-time expression applied to the elementary success probability.
Curve derived_curve(std::string label, std::string parameters, const Strategy &s, const ChannelParams &ch,
                    std::function<double(const ScenarioResult &, double T0)> rate_of) {
    const double T0 = base_slot_time(ch.segment_length_km, ch.signal_speed_m_per_s);
    return Curve{label, std::move(parameters), [=](double F) {
                     ScenarioResult r = scenario_rate(F, s, ch);
                     r.rate_hz = rate_of(r, T0);
                     r.effective_p = r.p0;
                     return row_from(label, F, r);
                 }};
}

SweepPlan figure_2() {
    SweepPlan plan;
    plan.title = "figure=2 exact vs (2/3)^n approximation, no purification";
    const auto ch = channel(1280);
    const auto s = strategy(6, 0);
    plan.curves.push_back(strategy_curve("exact", s, ch));
    plan.curves.push_back(derived_curve("approx", describe(s, ch) + " rate=(2/3)^n*P0/T0", s, ch,
                                        [](const ScenarioResult &r, double T0) {
                                            return rate_parallel_approx(6, SuccessProb(r.p0), T0);
                                        }));
    return plan;
}

SweepPlan figure_4() {
    SweepPlan plan;
    plan.title = "figure=4 parallel vs multiplexed, two segments, four rows";
    const auto ch = channel(40);
    Strategy mux = strategy(1, 0);
    mux.multiplex_rows = 4;
    plan.curves.push_back(strategy_curve("multiplexed_r4", mux, ch));
    const auto par = strategy(1, 0);
    plan.curves.push_back(derived_curve("parallel_r4", describe(par, ch) + " rows=4 same-row", par, ch,
                                        [](const ScenarioResult &r, double T0) {
                                            return 1.0 / (T0 * z_parallel_rows(4, 1 - r.p0));
                                        }));
    return plan;
}

SweepPlan figure_5() {
    SweepPlan plan;
    plan.title = "figure=5 one purification round: time bounds and approximation (rate = 1/time)";
    const auto ch = channel(1280);
    const auto s = strategy(6, 1);
    auto bound = [&](std::string label, int which) {
        return derived_curve(label, describe(s, ch), s, ch, [which](const ScenarioResult &r, double T0) {
            const auto b = purification_time_bounds(6, SuccessProb(r.p0), SuccessProb(r.p1_per_round.at(0)), T0);
            return 1.0 / (which == 0 ? b.lower_s : which == 1 ? b.approx_s : b.upper_s);
        });
    };
    plan.curves.push_back(bound("lower_time_bound", 0));
    plan.curves.push_back(bound("approx", 1));
    plan.curves.push_back(bound("upper_time_bound", 2));
    return plan;
}

SweepPlan figure_6() {
    SweepPlan plan;
    plan.title = "figure=6 one, two and three purification rounds at the first level";
    for (double L : {320.0, 640.0, 1280.0}) {
        for (int k : {1, 2, 3}) {
            plan.curves.push_back(
                strategy_curve(km_label(L) + "_k" + std::to_string(k), strategy(levels_for(L, 20), k), channel(L)));
        }
    }
    return plan;
}

SweepPlan figure_7() {
    SweepPlan plan;
    plan.title = "figure=7 multiplexing (effective probability) vs one purification round";
    auto mux_curve = [](double L, int rows) {
        Strategy s = strategy(levels_for(L, 20), 0);
        s.multiplex_rows = rows;
        return strategy_curve(km_label(L) + "_mux_r" + std::to_string(rows), s, channel(L));
    };
    for (double L : {40.0, 640.0, 1280.0}) {
        plan.curves.push_back(mux_curve(L, 2));
        plan.curves.push_back(strategy_curve(km_label(L) + "_purif_k1", strategy(levels_for(L, 20), 1), channel(L)));
    }
    plan.curves.push_back(mux_curve(1280, 16));
    plan.curves.push_back(mux_curve(1280, 32));
    return plan;
}

SweepPlan figure_8() {
    SweepPlan plan;
    plan.title = "figure=8 direct transmission, relay and repeater";
    for (double L : {80.0, 160.0, 320.0}) {
        const auto ch = channel(L);
        const int n = levels_for(L, 20);
        const GateQuality gq = GateQuality::from_loss(kDefaultGateLoss);
        const std::string base = km_label(L);
        const std::string params = "L=" + format_double(L) + " L0=20 n=" + std::to_string(n) +
                                   " gate_loss=" + gate_loss_text(gq);
        plan.curves.push_back({base + "_direct", params + " one hop, T=2L/c", [=](double F) {
                                   return row_from(base + "_direct", F, direct_transmission(F, L, false, ch, gq));
                               }});
        plan.curves.push_back(
            {base + "_direct_purif", params + " one hop, one round, waiting (3-2P)/(P(2-P)P1) slots", [=](double F) {
                 return row_from(base + "_direct_purif", F, direct_transmission(F, L, true, ch, gq));
             }});
        plan.curves.push_back({base + "_relay", params + " all segments in one slot", [=](double F) {
                                   return row_from(base + "_relay", F, relay(F, n, ch, gq));
                               }});
        plan.curves.push_back(strategy_curve(base + "_repeater_k1", strategy(n, 1), ch));
        plan.curves.push_back(strategy_curve(base + "_repeater_k0", strategy(n, 0), ch));
    }
    return plan;
}

SweepPlan figure_9() {
    SweepPlan plan;
    plan.title = "figure=9 two purification rounds over growing distance";
    for (double L : {1280.0, 2560.0, 5120.0, 10240.0}) {
        plan.curves.push_back(strategy_curve(km_label(L) + "_k2", strategy(levels_for(L, 20), 2), channel(L)));
    }
    return plan;
}

SweepPlan figure_10() {
    SweepPlan plan;
    plan.title = "figure=10 two purification rounds with local gate losses";
    const std::pair<const char *, double> losses[] = {{"0", 0.0}, {"1e-5", 1e-5}, {"1e-4", 1e-4}, {"1e-3", 1e-3}};
    for (const auto &[name, loss] : losses) {
        plan.curves.push_back(strategy_curve(std::string("gate_loss_") + name, strategy(6, 2, loss), channel(1280)));
    }
    return plan;
}

SweepPlan figure_11() {
    SweepPlan plan;
    plan.title = "figure=11 one purification round at the first vs the last level";
    const auto ch = channel(1280);
    plan.curves.push_back(strategy_curve("first_level", strategy(6, 1), ch));
    Strategy last = strategy(6, 1);
    last.placement = PurifPlacement::LastLevel;
    plan.curves.push_back(strategy_curve("last_level_two_chains", last, ch));
    last.appendix_d_mode = AppendixDMode::Verbatim2n;
    plan.curves.push_back(strategy_curve("last_level_verbatim_2n", last, ch));
    return plan;
}

}  // namespace

void SweepPlan::validate() const {
    if (!(f_min > 0.5 && f_min < f_max && f_max < 1)) {
        throw ConfigError("sweep needs 0.5 < f_min < f_max < 1");
    }
    if (steps < 2) {
        throw ConfigError("sweep needs at least two steps");
    }
}

double SweepPlan::point(int i) const {
    const int last = steps - 1;
    return (f_min * (last - i) + f_max * i) / last;
}

std::vector<CsvRow> run_sweep(const SweepPlan &plan, unsigned threads) {
    plan.validate();
    const std::size_t per_curve = static_cast<std::size_t>(plan.steps);
    const std::size_t total = per_curve * plan.curves.size();
    std::vector<CsvRow> rows(total);
    std::vector<std::exception_ptr> errors(total);

    auto evaluate = [&](std::size_t idx) {
        const Curve &curve = plan.curves[idx / per_curve];
        const double F = plan.point(static_cast<int>(idx % per_curve));
        try {
            rows[idx] = curve.evaluate(F);
        } catch (const UnreachableTargetError &) {
            rows[idx] = {curve.label, F, {}, {}, {}, {}, RowStatus::Unreachable};
        } catch (const DomainExitError &) {
            rows[idx] = {curve.label, F, {}, {}, {}, {}, RowStatus::DomainExit};
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    };

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || total < 2) {
        for (std::size_t i = 0; i < total; ++i) evaluate(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) evaluate(i);
            });
        }
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Ok:
            return "ok";
        case RowStatus::Unreachable:
            return "unreachable";
        case RowStatus::DomainExit:
            return "domain_exit";
    }
    return "unknown";
}

std::string format_csv(const SweepPlan &plan, const std::vector<CsvRow> &rows) {
    std::string out = "# " + plan.title + "; f_min=" + format_double(plan.f_min) +
                      " f_max=" + format_double(plan.f_max) + " steps=" + std::to_string(plan.steps);
    for (const auto &c : plan.curves) {
        out += "; " + c.label + ": " + c.parameters;
    }
    out += "\nstrategy_label,f_final,f_initial,p0,effective_p,rate_hz,status\n";
    auto opt = [](const std::optional<double> &v) { return v ? format_double(*v) : std::string(); };
    for (const auto &r : rows) {
        out += r.strategy_label + "," + format_double(r.f_final) + "," + opt(r.f_initial) + "," + opt(r.p0) + "," +
               opt(r.effective_p) + "," + opt(r.rate_hz) + "," + to_string(r.status) + "\n";
    }
    return out;
}

std::string describe(const Strategy &s, const ChannelParams &ch) {
    std::string out = "L=" + format_double(ch.total_length_km) + " L0=" + format_double(ch.segment_length_km) +
                      " Latt=" + format_double(ch.attenuation_length_km) +
                      " c=" + format_double(ch.signal_speed_m_per_s) + " n=" + std::to_string(s.nesting_levels) +
                      " k=" + std::to_string(s.purif_rounds) +
                      " placement=" + (s.placement == PurifPlacement::FirstLevel ? "first" : "last") +
                      " rows=" + std::to_string(s.multiplex_rows) + " gate_loss=" + gate_loss_text(s.gate_quality);
    if (s.placement == PurifPlacement::LastLevel) {
        out += std::string(" appendix_d_mode=") +
               (s.appendix_d_mode == AppendixDMode::TwoChains ? "two-chains" : "verbatim-2n");
    }
    return out;
}

Curve strategy_curve(std::string label, const Strategy &s, const ChannelParams &ch) {
    s.validate();
    return Curve{label, describe(s, ch), [=](double F) { return row_from(label, F, scenario_rate(F, s, ch)); }};
}

SweepPlan figure_preset(int figure) {
    switch (figure) {
        case 2:
            return figure_2();
        case 4:
            return figure_4();
        case 5:
            return figure_5();
        case 6:
            return figure_6();
        case 7:
            return figure_7();
        case 8:
            return figure_8();
        case 9:
            return figure_9();
        case 10:
            return figure_10();
        case 11:
            return figure_11();
        default:
            throw ConfigError("no preset for figure " + std::to_string(figure));
    }
}

std::vector<int> figure_preset_numbers() {
    return {2, 4, 5, 6, 7, 8, 9, 10, 11};
}

}  // namespace hqrate

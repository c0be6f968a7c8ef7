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

#include "hqrate/cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hqrate/errors.h"
#include "hqrate/mcsim.h"
#include "hqrate/sweep.h"

namespace hqrate {

namespace {

using nlohmann::ordered_json;

struct ScenarioInputs {
    double total_km = 1280;
    double segment_km = 20;
    double fidelity = 0.98;
    int purif_rounds = 2;
    std::string placement = "first";
    int rows = 1;
    double gate_loss = 1e-5;
    double attenuation_km = 25.5;
    double speed = 2e8;
    std::string appendix_d_mode = "two-chains";
};

// Registers the scenario flags on `cmd`, bound to `flags`. Values only take
// effect for flags actually given, so a config file can sit underneath.
class ScenarioFlags {
   public:
    void add_to(CLI::App *cmd, bool with_fidelity) {
        cmd_ = cmd;
        add("--total-km", &ScenarioInputs::total_km, "total distance L in km");
        add("--segment-km", &ScenarioInputs::segment_km, "elementary segment length L0 in km");
        if (with_fidelity) add("--fidelity", &ScenarioInputs::fidelity, "target end-to-end fidelity");
        add("--purif-rounds", &ScenarioInputs::purif_rounds, "purification rounds k");
        cmd->add_option("--purif-placement", flags_.placement, "first | last")
            ->check(CLI::IsMember({"first", "last"}));
        add("--rows", &ScenarioInputs::rows, "multiplexing rows r");
        add("--gate-loss", &ScenarioInputs::gate_loss, "local gate loss 1-T");
        add("--attenuation-km", &ScenarioInputs::attenuation_km, "fiber attenuation length in km");
        add("--speed", &ScenarioInputs::speed, "signal speed in m/s");
        cmd->add_option("--appendix-d-mode", flags_.appendix_d_mode, "two-chains | verbatim-2n")
            ->check(CLI::IsMember({"two-chains", "verbatim-2n"}));
    }

    void override(ScenarioInputs &in) const {
        auto take = [&](const char *name, auto member) {
            if (cmd_->count(name) > 0) in.*member = flags_.*member;
        };
        take("--total-km", &ScenarioInputs::total_km);
        take("--segment-km", &ScenarioInputs::segment_km);
        if (cmd_->get_option_no_throw("--fidelity") != nullptr) take("--fidelity", &ScenarioInputs::fidelity);
        take("--purif-rounds", &ScenarioInputs::purif_rounds);
        take("--purif-placement", &ScenarioInputs::placement);
        take("--rows", &ScenarioInputs::rows);
        take("--gate-loss", &ScenarioInputs::gate_loss);
        take("--attenuation-km", &ScenarioInputs::attenuation_km);
        take("--speed", &ScenarioInputs::speed);
        take("--appendix-d-mode", &ScenarioInputs::appendix_d_mode);
    }

   private:
    template <class T>
    void add(const char *name, T ScenarioInputs::*member, const char *help) {
        cmd_->add_option(name, flags_.*member, help);
    }

    CLI::App *cmd_ = nullptr;
    ScenarioInputs flags_;
};

ordered_json read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    try {
        auto j = ordered_json::parse(in);
        if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
        return j;
    } catch (const ordered_json::exception &e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

template <class T>
void read_key(const ordered_json &j, const char *key, T &dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const ordered_json::exception &) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

// Applies scenario keys from `j`; any key outside `allowed_extra` and the
// scenario set is rejected so typos do not pass silently.
void apply_scenario_json(const ordered_json &j, ScenarioInputs &in, std::initializer_list<const char *> allowed_extra) {
    static const char *const kKeys[] = {"total_km",  "segment_km",     "fidelity", "purif_rounds",
                                        "placement", "rows",           "gate_loss", "attenuation_km",
                                        "speed",     "appendix_d_mode"};
    for (const auto &item : j.items()) {
        const std::string &k = item.key();
        bool known = std::find(std::begin(kKeys), std::end(kKeys), k) != std::end(kKeys) ||
                     std::find_if(allowed_extra.begin(), allowed_extra.end(),
                                  [&](const char *e) { return k == e; }) != allowed_extra.end();
        if (!known) throw ConfigError("unknown config key '" + k + "'");
    }
    read_key(j, "total_km", in.total_km);
    read_key(j, "segment_km", in.segment_km);
    read_key(j, "fidelity", in.fidelity);
    read_key(j, "purif_rounds", in.purif_rounds);
    read_key(j, "placement", in.placement);
    read_key(j, "rows", in.rows);
    read_key(j, "gate_loss", in.gate_loss);
    read_key(j, "attenuation_km", in.attenuation_km);
    read_key(j, "speed", in.speed);
    read_key(j, "appendix_d_mode", in.appendix_d_mode);
}

ChannelParams channel_of(const ScenarioInputs &in) {
    ChannelParams ch;
    ch.total_length_km = in.total_km;
    ch.segment_length_km = in.segment_km;
    ch.attenuation_length_km = in.attenuation_km;
    ch.signal_speed_m_per_s = in.speed;
    ch.validate();
    return ch;
}

Strategy strategy_of(const ScenarioInputs &in, const ChannelParams &ch) {
    const double ratio = ch.total_length_km / ch.segment_length_km;
    const double n = std::round(std::log2(ratio));
    if (!(n >= 0) || n > 30 || std::abs(std::ldexp(1.0, static_cast<int>(n)) - ratio) > 1e-9 * ratio) {
        throw ConfigError("total length must be 2^n times the segment length");
    }
    Strategy s;
    s.nesting_levels = static_cast<int>(n);
    s.purif_rounds = in.purif_rounds;
    if (in.placement == "first") {
        s.placement = PurifPlacement::FirstLevel;
    } else if (in.placement == "last") {
        s.placement = PurifPlacement::LastLevel;
    } else {
        throw ConfigError("placement must be 'first' or 'last'");
    }
    s.multiplex_rows = in.rows;
    if (!(in.gate_loss >= 0 && in.gate_loss < 1)) throw ConfigError("gate loss must lie in [0, 1)");
    s.gate_quality = GateQuality::from_loss(in.gate_loss);
    if (in.appendix_d_mode == "two-chains") {
        s.appendix_d_mode = AppendixDMode::TwoChains;
    } else if (in.appendix_d_mode == "verbatim-2n") {
        s.appendix_d_mode = AppendixDMode::Verbatim2n;
    } else {
        throw ConfigError("appendix_d_mode must be 'two-chains' or 'verbatim-2n'");
    }
    s.validate();
    return s;
}

// Writes `text` to --output when given, otherwise to `out`.
void emit(const std::string &text, const std::string &output_path, std::ostream &out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + output_path);
    f << text;
    if (!f) throw ConfigError("failed writing " + output_path);
}

std::string json_text(const ordered_json &j) {
    return j.dump(2) + "\n";
}

int run_rate(const ScenarioInputs &in, const std::string &output, std::ostream &out) {
    const ChannelParams ch = channel_of(in);
    const Strategy s = strategy_of(in, ch);
    const ScenarioResult r = scenario_rate(in.fidelity, s, ch);
    ordered_json j;
    j["status"] = "ok";
    j["total_km"] = ch.total_length_km;
    j["segment_km"] = ch.segment_length_km;
    j["nesting_levels"] = s.nesting_levels;
    j["purif_rounds"] = s.purif_rounds;
    j["placement"] = in.placement;
    j["rows"] = s.multiplex_rows;
    j["gate_loss"] = in.gate_loss;
    j["attenuation_km"] = ch.attenuation_length_km;
    j["speed_m_per_s"] = ch.signal_speed_m_per_s;
    if (s.placement == PurifPlacement::LastLevel) j["appendix_d_mode"] = in.appendix_d_mode;
    j["slot_time_s"] = base_slot_time(ch.segment_length_km, ch.signal_speed_m_per_s);
    j["final_fidelity"] = r.final_fidelity.value();
    j["initial_fidelity"] = r.initial_fidelity.value();
    j["p0"] = r.p0;
    j["p1_per_round"] = r.p1_per_round;
    j["effective_p"] = r.effective_p;
    j["rate_hz"] = r.rate_hz;
    j["waiting_time_s"] = r.waiting_time_s;
    j["rate_model"] = r.rate_model;
    emit(json_text(j), output, out);
    return kExitOk;
}

struct SweepInputs {
    int figure = 0;
    double f_min = 0.501;
    double f_max = 0.999;
    int steps = 499;
    unsigned threads = 0;
};

SweepPlan build_sweep(const SweepInputs &flags, const CLI::App &cmd, const ScenarioFlags &scenario_flags,
                      const std::string &config_path) {
    SweepPlan plan;
    ordered_json cfg = config_path.empty() ? ordered_json::object() : read_config(config_path);
    if (cmd.count("--figure") > 0) {
        if (cfg.contains("strategies")) throw ConfigError("--figure cannot be combined with config strategies");
        plan = figure_preset(flags.figure);
    } else {
        ScenarioInputs defaults;
        apply_scenario_json(cfg, defaults, {"strategies", "f_min", "f_max", "steps"});
        scenario_flags.override(defaults);
        plan.title = "custom sweep";
        if (cfg.contains("strategies")) {
            const auto &list = cfg.at("strategies");
            if (!list.is_array() || list.empty()) throw ConfigError("'strategies' must be a non-empty array");
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (!list[i].is_object()) throw ConfigError("each strategy must be a JSON object");
                ScenarioInputs in = defaults;
                apply_scenario_json(list[i], in, {"label"});
                std::string label = "strategy" + std::to_string(i);
                read_key(list[i], "label", label);
                const ChannelParams ch = channel_of(in);
                plan.curves.push_back(strategy_curve(label, strategy_of(in, ch), ch));
            }
        } else {
            const ChannelParams ch = channel_of(defaults);
            plan.curves.push_back(strategy_curve("strategy0", strategy_of(defaults, ch), ch));
        }
        read_key(cfg, "f_min", plan.f_min);
        read_key(cfg, "f_max", plan.f_max);
        read_key(cfg, "steps", plan.steps);
    }
    if (cmd.count("--f-min") > 0) plan.f_min = flags.f_min;
    if (cmd.count("--f-max") > 0) plan.f_max = flags.f_max;
    if (cmd.count("--steps") > 0) plan.steps = flags.steps;
    plan.validate();
    return plan;
}

Protocol parse_protocol(const std::string &s) {
    if (s == "parallel") return Protocol::Parallel;
    if (s == "multiplexed") return Protocol::Multiplexed;
    if (s == "parallel-rows") return Protocol::ParallelRows;
    if (s == "purify-first") return Protocol::PurifyFirst;
    if (s == "purify-last") return Protocol::PurifyLast;
    throw ConfigError("unknown protocol " + s);
}

PurifyVariant parse_variant(const std::string &s) {
    if (s == "upper") return PurifyVariant::Upper;
    if (s == "lower") return PurifyVariant::Lower;
    if (s == "realistic") return PurifyVariant::Realistic;
    throw ConfigError("unknown variant " + s);
}

struct McInputs {
    std::string protocol = "parallel";
    int n = 0;
    int rows = 1;
    double p0 = 0.5;
    std::vector<double> p1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string variant = "realistic";
    int purification_slots = 1;
    unsigned threads = 0;
    bool histogram = false;
};

int run_mc(const McInputs &in, const std::string &output, std::ostream &out) {
    SimConfig cfg;
    cfg.protocol = parse_protocol(in.protocol);
    cfg.variant = parse_variant(in.variant);
    cfg.nesting_levels = in.n;
    cfg.rows = in.rows;
    cfg.p0 = in.p0;
    cfg.p1 = in.p1;
    cfg.trials = in.trials;
    cfg.seed = in.seed;
    cfg.purification_slots = in.purification_slots;
    cfg.threads = in.threads;
    cfg.histogram = in.histogram;
    cfg.validate();
    const SimEstimate est = simulate(cfg);

    ordered_json j;
    j["status"] = "ok";
    j["protocol"] = to_string(cfg.protocol);
    if (cfg.protocol == Protocol::PurifyFirst) j["variant"] = to_string(cfg.variant);
    j["n"] = cfg.nesting_levels;
    j["rows"] = cfg.rows;
    j["p0"] = cfg.p0;
    j["p1"] = cfg.p1;
    j["purification_slots"] = cfg.purification_slots;
    j["seed"] = cfg.seed;
    j["trials"] = est.trials;
    j["mean"] = est.mean_slots;
    j["std_error"] = est.std_error_slots;
    j["min"] = est.min_slots;
    j["max"] = est.max_slots;
    if (auto exact = closed_form_mean(cfg)) {
        j["analytic_mean"] = *exact;
        const double diff = est.mean_slots - *exact;
        if (est.std_error_slots > 0) {
            j["z_score"] = diff / est.std_error_slots;
        } else {
            // Degenerate sample: the estimate is exact or it is not.
            j["z_score"] = std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(*exact)) ? 0.0 : INFINITY;
        }
    } else {
        j["analytic_mean"] = nullptr;
        j["z_score"] = nullptr;
    }
    if (cfg.histogram) {
        ordered_json h = ordered_json::object();
        for (const auto &[slots, count] : est.histogram) h[std::to_string(slots)] = count;
        j["histogram"] = h;
    }
    emit(json_text(j), output, out);
    return kExitOk;
}

int report(std::ostream &out, int code, const std::string &type, const std::string &message,
           const ordered_json &extra = ordered_json::object()) {
    ordered_json j;
    j["status"] = "error";
    j["error"] = type;
    j["message"] = message;
    for (const auto &item : extra.items()) j[item.key()] = item.value();
    out << json_text(j);
    return code;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Rate analysis for hybrid quantum repeaters", "hqrate"};
    app.require_subcommand(1);

    std::string output;
    std::string config_path;

    ScenarioFlags rate_flags;
    auto *rate = app.add_subcommand("rate", "rate for one scenario at a target fidelity, as JSON");
    rate_flags.add_to(rate, true);
    rate->add_option("--config", config_path, "JSON config file; flags override it");
    rate->add_option("--output", output, "write to this file instead of stdout");

    ScenarioFlags sweep_flags;
    SweepInputs sweep_in;
    auto *sweep = app.add_subcommand("sweep", "rate over a final-fidelity grid, as CSV");
    sweep->add_option("--figure", sweep_in.figure, "figure preset (2, 4-11)");
    sweep->add_option("--f-min", sweep_in.f_min, "lowest final fidelity");
    sweep->add_option("--f-max", sweep_in.f_max, "highest final fidelity");
    sweep->add_option("--steps", sweep_in.steps, "grid points per curve");
    sweep->add_option("--threads", sweep_in.threads, "worker threads, 0 = hardware");
    sweep_flags.add_to(sweep, false);
    sweep->add_option("--config", config_path, "JSON config file with optional 'strategies' list");
    sweep->add_option("--output", output, "write to this file instead of stdout");

    McInputs mc_in;
    auto *mc = app.add_subcommand("mc", "Monte Carlo estimate of the waiting time in slots, as JSON");
    mc->add_option("--protocol", mc_in.protocol, "parallel | multiplexed | parallel-rows | purify-first | purify-last")
        ->check(CLI::IsMember({"parallel", "multiplexed", "parallel-rows", "purify-first", "purify-last"}));
    mc->add_option("--n", mc_in.n, "nesting levels");
    mc->add_option("--rows", mc_in.rows, "rows for multiplexed / parallel-rows");
    mc->add_option("--p0", mc_in.p0, "elementary success probability");
    mc->add_option("--p1", mc_in.p1, "purification success probability per round");
    mc->add_option("--trials", mc_in.trials, "number of trials");
    mc->add_option("--seed", mc_in.seed, "RNG seed");
    mc->add_option("--variant", mc_in.variant, "upper | lower | realistic")
        ->check(CLI::IsMember({"upper", "lower", "realistic"}));
    mc->add_option("--purification-slots", mc_in.purification_slots, "slots per purification attempt");
    mc->add_option("--threads", mc_in.threads, "worker threads, 0 = hardware");
    mc->add_flag("--histogram", mc_in.histogram, "include the slot-count histogram");
    mc->add_option("--output", output, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        return report(out, kExitConfigError, "config_error", e.what());
    }

    try {
        if (rate->parsed()) {
            ScenarioInputs in;
            if (!config_path.empty()) apply_scenario_json(read_config(config_path), in, {});
            rate_flags.override(in);
            return run_rate(in, output, out);
        }
        if (sweep->parsed()) {
            const SweepPlan plan = build_sweep(sweep_in, *sweep, sweep_flags, config_path);
            emit(format_csv(plan, run_sweep(plan, sweep_in.threads)), output, out);
            return kExitOk;
        }
        return run_mc(mc_in, output, out);
    } catch (const UnreachableTargetError &e) {
        return report(out, kExitUnreachable, "unreachable", e.what(), {{"achievable_max", e.achievable_max}});
    } catch (const DomainExitError &e) {
        return report(out, kExitUnreachable, "domain_exit", e.what(), {{"step", e.step}, {"fidelity", e.fidelity}});
    } catch (const ConvergenceError &e) {
        return report(out, kExitConvergence, "convergence", e.what());
    } catch (const DegenerateGateError &e) {
        return report(out, kExitConfigError, "degenerate_gate", e.what());
    } catch (const std::invalid_argument &e) {
        return report(out, kExitConfigError, "config_error", e.what());
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hqrate

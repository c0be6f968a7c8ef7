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

#ifndef HQRATE_SWEEP_H
#define HQRATE_SWEEP_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hqrate/chain.h"

namespace hqrate {

enum class RowStatus { Ok, Unreachable, DomainExit };

/// One CSV line: a strategy evaluated at one target final fidelity.
struct CsvRow {
    std::string strategy_label;
    double f_final = 0;
    std::optional<double> f_initial;
    std::optional<double> p0;
    std::optional<double> effective_p;
    std::optional<double> rate_hz;
    RowStatus status = RowStatus::Ok;
};

/// A labelled curve: maps a target final fidelity to a row. Evaluation may
/// throw; run_sweep turns unreachable targets and domain exits into status
/// rows and lets every other error propagate.
struct Curve {
    std::string label;
    std::string parameters;
    std::function<CsvRow(double)> evaluate;
};

struct SweepPlan {
    std::string title;
    double f_min = 0.501;
    double f_max = 0.999;
    int steps = 499;
    std::vector<Curve> curves;

    /// Throws ConfigError unless 0.5 < f_min < f_max < 1 and steps >= 2.
    void validate() const;
    double point(int i) const;
};

/// Rows ordered by (curve, fidelity) regardless of evaluation order.
std::vector<CsvRow> run_sweep(const SweepPlan &plan, unsigned threads = 0);

/// Header comment with every curve's parameters, column header, rows.
std::string format_csv(const SweepPlan &plan, const std::vector<CsvRow> &rows);

/// Shortest-free fixed format: 17 significant digits, '.' decimal point,
/// independent of the global locale.
std::string format_double(double x);

std::string to_string(RowStatus s);

/// Curve evaluating scenario_rate for a strategy over a channel.
Curve strategy_curve(std::string label, const Strategy &s, const ChannelParams &ch);

std::string describe(const Strategy &s, const ChannelParams &ch);

/// Sweeps reproducing the rate-vs-final-fidelity figures; figure numbers
/// 2, 4, 5, 6, 7, 8, 9, 10, 11. Throws ConfigError for unknown numbers.
SweepPlan figure_preset(int figure);
std::vector<int> figure_preset_numbers();

}  // namespace hqrate

#endif

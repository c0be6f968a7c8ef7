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

#ifndef HQRATE_ERRORS_H
#define HQRATE_ERRORS_H

#include <stdexcept>
#include <string>

namespace hqrate {

/// A numeric argument was outside the domain of the formula it feeds.
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A strategy or channel description is inconsistent (e.g. L != 2^n L0).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A lossy gate map pushed the pair fidelity below 1/2, where the rank-2
/// description no longer applies.
struct DomainExitError : std::runtime_error {
    DomainExitError(const std::string &msg, int step, double fidelity)
        : std::runtime_error(msg), step(step), fidelity(fidelity) {
    }
    /// Index of the map application (purification rounds first, then swap
    /// levels) at which the exit occurred; -1 when raised by a single gate.
    int step;
    double fidelity;
};

/// No initial fidelity in (1/2, 1] reaches the requested final fidelity.
struct UnreachableTargetError : std::runtime_error {
    UnreachableTargetError(const std::string &msg, double achievable_max)
        : std::runtime_error(msg), achievable_max(achievable_max) {
    }
    double achievable_max;
};

/// A lossy purification whose success probability evaluates to <= 0.
struct DegenerateGateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative evaluation failed to converge (series cap, root bracket).
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hqrate

#endif

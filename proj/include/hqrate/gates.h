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

#ifndef HQRATE_GATES_H
#define HQRATE_GATES_H

#include "hqrate/channel.h"

namespace hqrate {

/// Probe transmittance T of the local controlled-phase gate; 1 - T is the
/// local loss. T = 1 is the ideal gate.
class GateQuality {
   public:
    explicit GateQuality(double transmittance_T = 1.0);
    static GateQuality from_loss(double one_minus_T);
    double transmittance() const {
        return T_;
    }
    bool is_ideal() const {
        return T_ == 1.0;
    }

   private:
    double T_;
};

struct PurificationOutcome {
    Fidelity output_fidelity;
    double success_probability;
};

/// Rank-2 recurrence purification with ideal gates:
/// success F^2 + (1-F)^2, output F^2 / (F^2 + (1-F)^2).
PurificationOutcome purify_ideal(Fidelity f);

/// Deterministic swap with ideal gates: F^2 + (1-F)^2.
Fidelity swap_ideal(Fidelity f);

/// Purification with a lossy controlled-phase gate. Throws DegenerateGateError
/// if the success probability is not positive and DomainExitError if the
/// output fidelity leaves [1/2, 1].
PurificationOutcome purify_imperfect(Fidelity f, GateQuality gq);

/// Swap with a lossy controlled-phase gate. Swapping stays deterministic.
/// Throws DomainExitError if the output leaves [1/2, 1].
Fidelity swap_imperfect(Fidelity f, GateQuality gq);

/// Dispatches to the ideal or imperfect map depending on gq.
PurificationOutcome purify(Fidelity f, GateQuality gq);
Fidelity swap(Fidelity f, GateQuality gq);

namespace raw {

// Unchecked evaluations of the lossy-gate expressions for any F in [0, 1]
// and T in (0, 1]. Used where domain exits must be observed, not thrown.
struct PurifyValues {
    double fidelity;
    double success;
};
PurifyValues purify_lossy(double F, double T);
double swap_lossy(double F, double T);

}  // namespace raw

}  // namespace hqrate

#endif

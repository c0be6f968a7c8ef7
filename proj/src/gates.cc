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

#include "hqrate/gates.h"

#include <cmath>
#include <numbers>
#include <string>

#include "hqrate/errors.h"

namespace hqrate {

namespace {

constexpr double kPi = std::numbers::pi;

Fidelity checked_output(double value) {
    if (!(value >= 0.5 && value <= 1.0)) {
        throw DomainExitError("lossy gate output fidelity " + std::to_string(value) + " left [0.5, 1]", -1, value);
    }
    return Fidelity(value);
}

}  // namespace

GateQuality::GateQuality(double transmittance_T) : T_(transmittance_T) {
    if (!(transmittance_T > 0 && transmittance_T <= 1)) {
        throw InvalidParameterError("gate transmittance must lie in (0, 1], got " + std::to_string(transmittance_T));
    }
}

GateQuality GateQuality::from_loss(double one_minus_T) {
    if (!(one_minus_T >= 0 && one_minus_T < 1)) {
        throw InvalidParameterError("gate loss must lie in [0, 1), got " + std::to_string(one_minus_T));
    }
    return GateQuality(1.0 - one_minus_T);
}

PurificationOutcome purify_ideal(Fidelity f) {
    const double F = f.value();
    const double p = F * F + (1 - F) * (1 - F);
    return {Fidelity(F * F / p), p};
}

Fidelity swap_ideal(Fidelity f) {
    const double F = f.value();
    return Fidelity(F * F + (1 - F) * (1 - F));
}

namespace raw {

PurifyValues purify_lossy(double F, double T) {
    const double sqrtT = std::sqrt(T);
    const double a = kPi * (T - 1) / sqrtT;
    const double sech = 1 / std::cosh(std::log(T) / 2);

    // exp(a (2 - i sech)/2) + exp(a (2 + i sech)/2): a and sech are real, so
    // the pair is conjugate and sums to 2 Re = 2 e^a cos(a sech / 2).
    const double conjugate_pair = 2 * std::exp(a) * std::cos(a * sech / 2);
    const double P = 0.5 + std::exp(a) * (F - 1) * F + conjugate_pair * (2 * (F - 1) * F + 1) / 4;

    const double first = (F + F * std::exp(-kPi * (2 - 2 * T) / sqrtT)) / (4 * P);
    const double second = 2 * F * std::exp(a) * (std::sin(kPi * (1.5 - 2 / (T + 1))) * F + F - 1) / (4 * P);
    return {first + second, P};
}

double swap_lossy(double F, double T) {
    const double x = std::log(T) / 2;
    return 0.25 + 0.25 * std::exp(2 * kPi * std::sinh(x)) * (1 - 2 * F) * (1 - 2 * F) +
           std::exp(kPi * std::sinh(x)) / 2 * (2 * (F - 1) * F + 1) * std::cos(kPi / 2 * std::tanh(x));
}

}  // namespace raw

PurificationOutcome purify_imperfect(Fidelity f, GateQuality gq) {
    const auto v = raw::purify_lossy(f.value(), gq.transmittance());
    if (!(v.success > 0)) {
        throw DegenerateGateError("lossy purification success probability " + std::to_string(v.success) +
                                  " is not positive");
    }
    return {checked_output(v.fidelity), v.success};
}

Fidelity swap_imperfect(Fidelity f, GateQuality gq) {
    return checked_output(raw::swap_lossy(f.value(), gq.transmittance()));
}

PurificationOutcome purify(Fidelity f, GateQuality gq) {
    return gq.is_ideal() ? purify_ideal(f) : purify_imperfect(f, gq);
}

Fidelity swap(Fidelity f, GateQuality gq) {
    return gq.is_ideal() ? swap_ideal(f) : swap_imperfect(f, gq);
}

}  // namespace hqrate

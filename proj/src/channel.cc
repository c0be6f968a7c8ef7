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

#include "hqrate/channel.h"

#include <cmath>
#include <numbers>
#include <string>

#include "hqrate/errors.h"

namespace hqrate {

namespace {

void require_positive(double x, const char *name) {
    if (!(x > 0) || !std::isfinite(x)) {
        throw InvalidParameterError(std::string(name) + " must be positive and finite, got " + std::to_string(x));
    }
}

// USD formulas diverge at eta = 1; the lossless limit is eta = 1 - eps.
void require_lossy_eta(double eta) {
    if (!(eta > 0 && eta < 1)) {
        throw InvalidParameterError("transmittance must lie in (0, 1), got " + std::to_string(eta));
    }
}

}  // namespace

Fidelity::Fidelity(double value) : value_(value) {
    if (!(value >= 0.5 && value <= 1.0)) {
        throw InvalidParameterError("fidelity must lie in [0.5, 1], got " + std::to_string(value));
    }
}

void ChannelParams::validate() const {
    require_positive(total_length_km, "total_length_km");
    require_positive(segment_length_km, "segment_length_km");
    require_positive(attenuation_length_km, "attenuation_length_km");
    require_positive(signal_speed_m_per_s, "signal_speed_m_per_s");
}

void GenParams::validate() const {
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw InvalidParameterError("alpha must be nonnegative");
    }
    if (!(theta > 0 && theta <= std::numbers::pi)) {
        throw InvalidParameterError("theta must lie in (0, pi]");
    }
}

double GenParams::interaction_strength() const {
    return alpha * alpha * (1 - std::cos(theta));
}

double transmittance(double segment_length_km, double attenuation_length_km) {
    require_positive(segment_length_km, "segment length");
    require_positive(attenuation_length_km, "attenuation length");
    return std::exp(-segment_length_km / attenuation_length_km);
}

double base_slot_time(double segment_length_km, double signal_speed_m_per_s) {
    require_positive(segment_length_km, "segment length");
    require_positive(signal_speed_m_per_s, "signal speed");
    return 2.0 * segment_length_km * 1000.0 / signal_speed_m_per_s;
}

Fidelity fidelity_from_interaction(const GenParams &gen, double eta) {
    gen.validate();
    if (!(eta > 0 && eta <= 1)) {
        throw InvalidParameterError("transmittance must lie in (0, 1], got " + std::to_string(eta));
    }
    return Fidelity((1 + std::exp(-(1 - eta) * gen.interaction_strength())) / 2);
}

double required_interaction_strength(Fidelity f, double eta) {
    if (f.value() == 0.5) {
        throw InvalidParameterError("fidelity 0.5 requires infinite interaction strength");
    }
    require_lossy_eta(eta);
    return -std::log(2 * f.value() - 1) / (1 - eta);
}

double optimal_failure_probability(Fidelity f, double eta) {
    require_lossy_eta(eta);
    return std::pow(2 * f.value() - 1, eta / (1 - eta));
}

double success_probability(Fidelity f, double eta) {
    require_lossy_eta(eta);
    // 1 - (2F-1)^x without cancellation as F -> 1.
    return -std::expm1(eta / (1 - eta) * std::log1p(2 * f.value() - 2));
}

}  // namespace hqrate

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

#ifndef HQRATE_CHANNEL_H
#define HQRATE_CHANNEL_H

namespace hqrate {

/// Fidelity of a rank-2 mixture of the phi+/phi- Bell states. The whole rate
/// model tracks a pair by this one number; below 1/2 the description breaks.
class Fidelity {
   public:
    explicit Fidelity(double value);
    double value() const {
        return value_;
    }
    friend bool operator==(Fidelity a, Fidelity b) = default;

   private:
    double value_;
};

/// Fiber geometry and timing. Lengths are in km; the signal speed is in m/s.
struct ChannelParams {
    double total_length_km;
    double segment_length_km;
    double attenuation_length_km = 25.5;
    double signal_speed_m_per_s = 2e8;

    /// Throws InvalidParameterError unless every field is strictly positive.
    void validate() const;
};

/// Qubus interaction parameters: coherent amplitude alpha and effective
/// interaction time theta (radians). The phase xi = alpha^2 sin(theta)
/// cancels from every rate and fidelity quantity and is not carried.
struct GenParams {
    double alpha;
    double theta;

    void validate() const;
    /// alpha^2 (1 - cos theta), the only combination the fidelity sees.
    double interaction_strength() const;
};

/// e^{-L/L_att}.
double transmittance(double segment_length_km, double attenuation_length_km);

/// Elementary slot time 2 L0 / c in seconds (L0 in km, c in m/s).
double base_slot_time(double segment_length_km, double signal_speed_m_per_s);

/// F = (1 + exp(-(1 - eta) alpha^2 (1 - cos theta))) / 2.
Fidelity fidelity_from_interaction(const GenParams &gen, double eta);

/// Inverse of fidelity_from_interaction: the alpha^2 (1 - cos theta) that
/// yields F at transmittance eta. Requires 1/2 < F <= 1 and 0 < eta < 1.
double required_interaction_strength(Fidelity f, double eta);

/// Optimal USD inconclusive probability (2F - 1)^{eta / (1 - eta)}.
double optimal_failure_probability(Fidelity f, double eta);

/// 1 - optimal_failure_probability(f, eta).
double success_probability(Fidelity f, double eta);

}  // namespace hqrate

#endif

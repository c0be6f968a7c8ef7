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

#include <gtest/gtest.h>

#include <cmath>

#include "hqrate/channel.h"
#include "hqrate/errors.h"

namespace hqrate {
namespace {

// Reference values computed with mpmath at 60 digits (tests/oracles).
TEST(Channel, TransmittanceMatchesOracle) {
    EXPECT_NEAR(transmittance(20, 25.5), 0.45643283254493359, 1e-15);
    EXPECT_NEAR(transmittance(25.5, 25.5), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(transmittance(1e-9, 25.5), 1.0, 1e-9);
}

TEST(Channel, TransmittanceIsMultiplicative) {
    for (double a : {1.0, 7.5, 20.0, 300.0}) {
        for (double b : {0.3, 20.0, 640.0}) {
            EXPECT_NEAR(transmittance(a + b, 25.5), transmittance(a, 25.5) * transmittance(b, 25.5), 1e-12);
        }
    }
}

TEST(Channel, SlotTimeIsRoundTripOverOneSegment) {
    EXPECT_DOUBLE_EQ(base_slot_time(20, 2e8), 2e-4);
    EXPECT_DOUBLE_EQ(base_slot_time(40, 2e8), 4e-4);
}

TEST(Channel, FidelityFromInteraction) {
    const double eta = transmittance(20, 25.5);
    GenParams g;
    g.alpha = 1;
    g.theta = std::acos(0.0);  // alpha^2 (1 - cos theta) = 1
    EXPECT_NEAR(g.interaction_strength(), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_from_interaction(g, eta).value(), 0.79033659750626908, 1e-14);
}

TEST(Channel, NoDephasingLimits) {
    GenParams g;
    g.alpha = 0;
    g.theta = 1;
    EXPECT_DOUBLE_EQ(fidelity_from_interaction(g, 0.3).value(), 1.0);
    g.alpha = 3;
    EXPECT_DOUBLE_EQ(fidelity_from_interaction(g, 1.0).value(), 1.0);
}

TEST(Channel, StrengthAndFailureProbabilityAgree) {
    for (double eta : {0.05, 0.45643, 0.7, 0.95}) {
        for (double F = 0.505; F < 1; F += 0.01) {
            const double s = required_interaction_strength(Fidelity(F), eta);
            EXPECT_NEAR(std::exp(-eta * s), optimal_failure_probability(Fidelity(F), eta), 1e-12);
        }
    }
}

TEST(Channel, RequiredStrengthMatchesOracle) {
    EXPECT_NEAR(required_interaction_strength(Fidelity(0.75), 0.5), 1.3862943611198906, 1e-14);
}

TEST(Channel, FailureProbabilityMatchesOracle) {
    const double eta = transmittance(20, 25.5);
    EXPECT_NEAR(optimal_failure_probability(Fidelity(0.8), eta), 0.65119913702060059, 1e-14);
    EXPECT_NEAR(success_probability(Fidelity(0.8), eta), 1 - 0.65119913702060059, 1e-14);
}

TEST(Channel, EndpointsOfTheTradeoff) {
    const double eta = 0.4;
    EXPECT_DOUBLE_EQ(optimal_failure_probability(Fidelity(1.0), eta), 1.0);
    EXPECT_DOUBLE_EQ(success_probability(Fidelity(1.0), eta), 0.0);
    EXPECT_DOUBLE_EQ(success_probability(Fidelity(0.5), eta), 1.0);
}

TEST(Channel, StrengthRoundTripsThroughFidelity) {
    for (double eta : {0.1, 0.45, 0.9}) {
        for (double F = 0.51; F < 1; F += 0.02) {
            GenParams g;
            g.alpha = std::sqrt(required_interaction_strength(Fidelity(F), eta));
            g.theta = std::acos(0.0);
            EXPECT_NEAR(fidelity_from_interaction(g, eta).value(), F, 1e-12) << "eta=" << eta << " F=" << F;
        }
    }
}

TEST(Channel, SuccessIsDecreasingInFidelityAndIncreasingInEta) {
    for (double eta : {0.2, 0.5, 0.8}) {
        double prev = 2;
        for (double F = 0.5; F <= 1.0; F += 0.005) {
            const double P = success_probability(Fidelity(std::min(F, 1.0)), eta);
            EXPECT_LE(P, prev);
            EXPECT_GE(P, 0);
            EXPECT_LE(P, 1);
            EXPECT_GT(success_probability(Fidelity(std::min(F, 1.0)), eta + 0.1), P - 1e-15);
            prev = P;
        }
    }
}

TEST(Channel, SuccessIsStableCloseToOne) {
    // At eta = 1/2 the exponent is 1, so P = 2 - 2F exactly. The direct
    // 1 - (2F-1)^x loses about four digits here.
    const double F = 1 - 1e-12;
    const double P = success_probability(Fidelity(F), 0.5);
    EXPECT_NEAR(P, 2 * (1 - F), 1e-26);
}

TEST(Channel, RejectsInvalidInput) {
    EXPECT_THROW(Fidelity(0.49), InvalidParameterError);
    EXPECT_THROW(Fidelity(1.01), InvalidParameterError);
    EXPECT_THROW(Fidelity(std::nan("")), InvalidParameterError);
    EXPECT_THROW(transmittance(-1, 25.5), InvalidParameterError);
    EXPECT_THROW(transmittance(0, 25.5), InvalidParameterError);
    EXPECT_THROW(required_interaction_strength(Fidelity(0.5), 0.5), InvalidParameterError);
    EXPECT_THROW(required_interaction_strength(Fidelity(0.8), 1.0), InvalidParameterError);
    EXPECT_THROW(fidelity_from_interaction(GenParams{}, 1.5), InvalidParameterError);
    EXPECT_THROW(transmittance(20, 0), InvalidParameterError);
    EXPECT_THROW(base_slot_time(20, 0), InvalidParameterError);
    EXPECT_THROW(success_probability(Fidelity(0.8), 1.0), InvalidParameterError);
    EXPECT_THROW(success_probability(Fidelity(0.8), 0.0), InvalidParameterError);
    GenParams g;
    g.alpha = -1;
    EXPECT_THROW(g.validate(), InvalidParameterError);
    ChannelParams ch;
    ch.total_length_km = 1280;
    ch.segment_length_km = 0;
    EXPECT_THROW(ch.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace hqrate

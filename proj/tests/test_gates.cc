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
#include <complex>
#include <numbers>

#include "hqrate/errors.h"
#include "hqrate/gates.h"

namespace hqrate {
namespace {

TEST(Gates, IdealPurificationExamples) {
    auto r = purify_ideal(Fidelity(0.9));
    EXPECT_NEAR(r.output_fidelity.value(), 0.81 / 0.82, 1e-15);
    EXPECT_NEAR(r.success_probability, 0.82, 1e-15);
    r = purify_ideal(Fidelity(0.5));
    EXPECT_DOUBLE_EQ(r.output_fidelity.value(), 0.5);
    EXPECT_DOUBLE_EQ(r.success_probability, 0.5);
    r = purify_ideal(Fidelity(1));
    EXPECT_DOUBLE_EQ(r.output_fidelity.value(), 1);
    EXPECT_DOUBLE_EQ(r.success_probability, 1);
}

TEST(Gates, IdealSwapExamples) {
    EXPECT_NEAR(swap_ideal(Fidelity(0.9)).value(), 0.82, 1e-15);
    EXPECT_DOUBLE_EQ(swap_ideal(Fidelity(0.5)).value(), 0.5);
    EXPECT_DOUBLE_EQ(swap_ideal(Fidelity(1)).value(), 1);
}

TEST(Gates, IdealMapsAreMonotoneAndOrdered) {
    double prev_p = 0, prev_s = 0;
    for (int i = 1; i <= 500; ++i) {
        const double F = 0.5 + 0.5 * i / 500.0;
        const auto p = purify_ideal(Fidelity(F));
        const double s = swap_ideal(Fidelity(F)).value();
        EXPECT_GE(p.output_fidelity.value(), F);
        EXPECT_LE(s, F);
        EXPECT_GT(p.output_fidelity.value(), prev_p);
        EXPECT_GT(s, prev_s);
        prev_p = p.output_fidelity.value();
        prev_s = s;
        if (i < 500) {
            EXPECT_GT(p.output_fidelity.value(), F);
            EXPECT_LT(s, F);
        }
    }
}

// mpmath, 60 digits, frozen.
TEST(Gates, LossyValuesMatchOracle) {
    const auto r = purify_imperfect(Fidelity(0.9), GateQuality::from_loss(1e-3));
    EXPECT_NEAR(r.output_fidelity.value(), 0.98591504590591193, 1e-13);
    EXPECT_NEAR(r.success_probability, 0.81899526164693248, 1e-13);
    EXPECT_NEAR(swap_imperfect(Fidelity(0.95), GateQuality::from_loss(1e-4)).value(), 0.90486531165982714, 1e-13);
}

TEST(Gates, LossyMapsReduceToIdealAtUnitTransmittance) {
    for (int i = 0; i < 100; ++i) {
        const double F = 0.5 + 0.5 * i / 99.0;
        const auto v = raw::purify_lossy(F, 1.0);
        const auto ideal = purify_ideal(Fidelity(F));
        EXPECT_NEAR(v.fidelity, ideal.output_fidelity.value(), 1e-12);
        EXPECT_NEAR(v.success, ideal.success_probability, 1e-12);
        EXPECT_NEAR(raw::swap_lossy(F, 1.0), swap_ideal(Fidelity(F)).value(), 1e-12);
    }
}

// The conjugate exponential pair evaluated with complex arithmetic, as it is
// printed, against the real form used in production.
TEST(Gates, ConjugatePairMatchesComplexEvaluation) {
    using C = std::complex<double>;
    const double pi = std::numbers::pi;
    for (double T : {0.5, 0.9, 0.99, 0.999, 1 - 1e-5}) {
        const double a = pi * (T - 1) / std::sqrt(T);
        const double sech = 1 / std::cosh(std::log(T) / 2);
        const C pair = std::exp(a * C(2, -sech) / 2.0) + std::exp(a * C(2, sech) / 2.0);
        EXPECT_LT(std::abs(pair.imag()), 1e-15);
        for (double F : {0.5, 0.7, 0.9, 1.0}) {
            const double P = 0.5 + std::exp(a) * (F - 1) * F + pair.real() * (2 * (F - 1) * F + 1) / 4;
            EXPECT_NEAR(raw::purify_lossy(F, T).success, P, 1e-14) << "T=" << T << " F=" << F;
        }
    }
}

// The slope in T reaches about 2.2 (the exponent carries a factor pi), so a
// step of 1e-6 in T may move the output by slightly more than 1e-6. Checked
// instead: changes shrink in proportion to the step, with a slope below 10.
TEST(Gates, LossyMapsAreContinuousInTransmittance) {
    for (double F : {0.55, 0.8, 0.95, 0.999}) {
        for (double T = 0.5; T < 1.0 - 1e-6; T += 0.00123) {
            for (double h : {1e-6, 1e-8}) {
                const auto a = raw::purify_lossy(F, T);
                const auto b = raw::purify_lossy(F, T + h);
                EXPECT_LT(std::abs(a.fidelity - b.fidelity), 10 * h);
                EXPECT_LT(std::abs(a.success - b.success), 10 * h);
                EXPECT_LT(std::abs(raw::swap_lossy(F, T) - raw::swap_lossy(F, T + h)), 10 * h);
            }
        }
    }
}

TEST(Gates, LossDegradesOutputs) {
    for (double F : {0.7, 0.9, 0.99}) {
        const double ideal = swap_ideal(Fidelity(F)).value();
        EXPECT_LT(swap_imperfect(Fidelity(F), GateQuality::from_loss(1e-3)).value(), ideal);
        EXPECT_LT(purify_imperfect(Fidelity(F), GateQuality::from_loss(1e-3)).output_fidelity.value(),
                  purify_ideal(Fidelity(F)).output_fidelity.value());
    }
}

TEST(Gates, DispatchersPickTheRightMap) {
    EXPECT_DOUBLE_EQ(swap(Fidelity(0.9), GateQuality{}).value(), swap_ideal(Fidelity(0.9)).value());
    const GateQuality lossy = GateQuality::from_loss(1e-4);
    EXPECT_DOUBLE_EQ(swap(Fidelity(0.9), lossy).value(), swap_imperfect(Fidelity(0.9), lossy).value());
    EXPECT_DOUBLE_EQ(purify(Fidelity(0.9), lossy).success_probability,
                     purify_imperfect(Fidelity(0.9), lossy).success_probability);
}

TEST(Gates, DomainExitIsReportedNotClamped) {
    // At F = 1/2 any loss pushes the swapped fidelity below 1/2.
    EXPECT_LT(raw::swap_lossy(0.5, 0.99), 0.5);
    try {
        swap_imperfect(Fidelity(0.5), GateQuality(0.99));
        FAIL() << "expected DomainExitError";
    } catch (const DomainExitError &e) {
        EXPECT_EQ(e.step, -1);
        EXPECT_LT(e.fidelity, 0.5);
    }
}

TEST(Gates, RejectsInvalidGateQuality) {
    EXPECT_THROW(GateQuality(0), InvalidParameterError);
    EXPECT_THROW(GateQuality(1.1), InvalidParameterError);
    EXPECT_THROW(GateQuality::from_loss(-1e-3), InvalidParameterError);
    EXPECT_THROW(GateQuality::from_loss(1), InvalidParameterError);
    EXPECT_TRUE(GateQuality::from_loss(0).is_ideal());
}

}  // namespace
}  // namespace hqrate

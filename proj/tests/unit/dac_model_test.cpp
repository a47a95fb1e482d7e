// Copyright 2026 The heliodac Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>

#include <gtest/gtest.h>

#include "heliodac/dac_model.hpp"
#include "heliodac/error.hpp"
#include "support.hpp"

namespace heliodac {
namespace {

Technology unit_mof()
{
    PlantSizing sizing;
    sizing.annual_capacity_t = 8760;
    return make_technology(testing::mof_spec(), sizing);
}

TEST(Capacity, PerCycle)
{
    EXPECT_NEAR(capacity_per_cycle(6000, 1.0), 0.6849, 1e-4);
    EXPECT_DOUBLE_EQ(capacity_per_cycle(8760, 1.0), 1.0);
    EXPECT_NEAR(capacity_per_cycle(6000, 9.6), 6.575, 1e-3);
    EXPECT_THROW(capacity_per_cycle(0, 1.0), ArgumentError);
}

TEST(Rates, AdsorptionCap)
{
    const auto mof = unit_mof();
    EXPECT_DOUBLE_EQ(adsorption_cap(0.0, mof, 1.0), 0.2);
    EXPECT_EQ(adsorption_cap(1.0, mof, 1.0), 0.0);
    EXPECT_NEAR(adsorption_cap(0.5, mof, 0.8), 0.08, 1e-15);
}

TEST(Rates, DesorptionCap)
{
    const auto mof = unit_mof();
    EXPECT_DOUBLE_EQ(desorption_cap(1.0, mof), 0.4);
    EXPECT_EQ(desorption_cap(0.0, mof), 0.0);
    EXPECT_DOUBLE_EQ(desorption_cap(0.5, mof), 0.2);
}

TEST(StepState, TruthTable)
{
    const auto mof = unit_mof();
    auto r = step_state({0.0, Phase::idle, 0}, Phase::adsorb, {0.2, 0.0}, mof);
    EXPECT_EQ(r.state.k, 1);
    EXPECT_EQ(r.z, 1);
    r = step_state({0.2, Phase::adsorb, 1}, Phase::idle, {}, mof);
    EXPECT_EQ(r.state.k, 1);
    EXPECT_EQ(r.z, 0);
    r = step_state({0.2, Phase::idle, 1}, Phase::desorb, {0.0, 0.08}, mof);
    EXPECT_EQ(r.state.k, 0);
    EXPECT_EQ(r.z, 0);
    EXPECT_NEAR(r.state.X, 0.12, 1e-15);
}

TEST(StepState, RejectsInfeasible)
{
    const auto mof = unit_mof();
    EXPECT_THROW(step_state({0.9, Phase::idle, 1}, Phase::adsorb, {0.2, 0.0}, mof), InfeasibleError);
    EXPECT_THROW(step_state({0.1, Phase::idle, 1}, Phase::desorb, {0.0, 0.2}, mof), InfeasibleError);
    EXPECT_THROW(step_state({0.1, Phase::idle, 1}, Phase::idle, {0.1, 0.0}, mof), InfeasibleError);
}

TEST(Ambient, SolidFactors)
{
    const auto base = ambient_factors_solid(20, 0.5);
    EXPECT_DOUBLE_EQ(base.energy_factor, 1.0);
    EXPECT_DOUBLE_EQ(base.capture_factor, 1.0);

    // Raw curves, normalized at 20 degC and 50 % RH.
    auto raw_c = [](double T, double RH) {
        const double r = RH - 0.4;
        return (1.9 + 0.01 * (T - 20)) * r * r * std::exp(r) + 1.5 + 0.003 * (T - 20) * (T - 20);
    };
    auto raw_eta = [](double T, double RH) {
        const double r = RH - 0.4;
        return 65 - 0.01 * T * T - (T + 20) * r * r;
    };
    const auto f = ambient_factors_solid(30, 0.8);
    EXPECT_NEAR(f.energy_factor, 1.4973, 1e-3);
    EXPECT_NEAR(f.capture_factor, 0.7921, 1e-3);
    EXPECT_NEAR(f.energy_factor, raw_c(30, 0.8) / raw_c(20, 0.5), 1e-12);
    EXPECT_NEAR(f.capture_factor, raw_eta(30, 0.8) / raw_eta(20, 0.5), 1e-12);
    EXPECT_NEAR(ambient_factors_solid(0, 0.5).capture_factor, 1.0693, 1e-3);
}

TEST(Ambient, KohCapture)
{
    EXPECT_DOUBLE_EQ(ambient_capture_koh(20, 0.5), 1.0);
    EXPECT_NEAR(ambient_capture_koh(30, 0.7), 1.1568, 1e-4);
    EXPECT_NEAR(ambient_capture_koh(10, 0.3), 0.8432, 1e-4);
    const auto f = ambient_factors(CaptureModel::koh, 30, 0.7);
    EXPECT_EQ(f.energy_factor, 1.0);
    EXPECT_NEAR(f.capture_factor, 1.1568, 1e-4);
}

TEST(Technologies, BundledFileMatchesTable)
{
    const auto all = load_technologies(testing::data_dir() / "technologies.json");
    ASSERT_EQ(all.size(), 3u);
    for (const auto& want : {testing::aeatpms_spec(), testing::apdes_spec(), testing::mof_spec()}) {
        const auto& got = find_technology(all, want.name);
        EXPECT_EQ(got.S, want.S) << want.name;
        EXPECT_EQ(got.P_a, want.P_a) << want.name;
        EXPECT_EQ(got.P_d, want.P_d) << want.name;
        EXPECT_EQ(got.beta_a1, want.beta_a1) << want.name;
        EXPECT_EQ(got.beta_a2, want.beta_a2) << want.name;
        EXPECT_EQ(got.beta_d1, want.beta_d1) << want.name;
        EXPECT_EQ(got.beta_d2, want.beta_d2) << want.name;
        EXPECT_EQ(got.cycle_hours, want.cycle_hours) << want.name;
    }
    EXPECT_THROW(find_technology(all, "KOH-X"), ValidationError);
}

TEST(Technologies, Sizing)
{
    PlantSizing sizing;
    sizing.annual_capacity_t = 6000;
    sizing.thermal_mwh_per_t = 4.0;
    sizing.sorbent_cost_fraction = 0.2;
    const auto t = make_technology(testing::mof_spec(), sizing);
    const double X = 6000.0 / 8760.0;
    EXPECT_DOUBLE_EQ(t.X_max, X);
    EXPECT_DOUBLE_EQ(t.P_a, 0.642 * X / 12.0);
    EXPECT_DOUBLE_EQ(t.P_d, 0.097 * X / 12.0);
    EXPECT_DOUBLE_EQ(t.S, 115.60 * X * 0.2);
    EXPECT_DOUBLE_EQ(t.rate_epsilon, 0.01 * 0.2 * X);
    // 0.4 X per step releases down to the 1 % threshold in 11 steps.
    EXPECT_EQ(nominal_desorb_steps(t), 11);
    EXPECT_DOUBLE_EQ(t.H, 4.0 * X / 11.0);
}

TEST(Technologies, RejectsBadFile)
{
    testing::TempDir dir;
    testing::write_text(dir / "t.json", R"({"technologies": [{"name": "x", "S": 1}]})");
    EXPECT_THROW(load_technologies(dir / "t.json"), SchemaError);
    testing::write_text(dir / "u.json", "{");
    EXPECT_THROW(load_technologies(dir / "u.json"), SchemaError);
}

} // namespace
} // namespace heliodac

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
#include <limits>

#include <gtest/gtest.h>

#include "heliodac/error.hpp"
#include "heliodac/thermo_sim.hpp"
#include "support.hpp"

namespace heliodac {
namespace {

StorageParams storage70()
{
    StorageParams s;
    s.h_rated = 70;
    return s;
}

ThermalPlant mof_plant(double h0 = 50.0)
{
    return calibrate(thermal_template(storage70(), 400, h0), testing::mof_tech(6000), 300);
}

// n cycles of 12 adsorb steps followed by 11 desorb steps.
std::vector<StepRecord> cycles(int n, int adsorb = 12, int desorb = 11)
{
    std::vector<StepRecord> s;
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < adsorb; ++i)
            s.push_back({.phase = Phase::adsorb});
        for (int i = 0; i < desorb; ++i)
            s.push_back({.phase = Phase::desorb});
    }
    return s;
}

TEST(Calibrate, MofHeatsWithinTwentyMinutes)
{
    const auto p = mof_plant();
    const double t = newton_time(p.dac_heat_capacity, p.UA_heat, p.T_source_min, 20.0, 100.0 - p.temperature_tolerance);
    EXPECT_LE(t, 20 * 60.0);
    EXPECT_GT(p.UA_heat, 0.0);
    EXPECT_GT(p.UA_cool, 0.0);
    EXPECT_LT(p.sim_step_s, 0.1 * p.dac_heat_capacity / std::max(p.UA_heat, p.UA_cool));
}

TEST(Calibrate, LongerCycleNeedsLessConductance)
{
    const auto tpl = thermal_template(storage70(), 400, 50);
    auto fast = testing::mof_tech(6000);
    auto slow = fast;
    slow.cycle_hours = 9.6;
    const auto a = calibrate(tpl, fast, 300);
    const auto b = calibrate(tpl, slow, 300);
    EXPECT_LT(b.UA_heat, a.UA_heat);
    EXPECT_NEAR(a.UA_heat / b.UA_heat, 9.6, 1e-9);
}

TEST(Calibrate, RejectsUnreachableTargets)
{
    auto tpl = thermal_template(storage70(), 400, 50);
    tpl.plant.dac_heat_capacity = std::numeric_limits<double>::infinity();
    EXPECT_THROW(calibrate(tpl, testing::mof_tech(6000), 300), CalibrationError);
    tpl = thermal_template(storage70(), 400, 50);
    tpl.plant.T_source_min = 90;
    EXPECT_THROW(calibrate(tpl, testing::mof_tech(6000), 300), CalibrationError);
}

TEST(Simulate, HotSandHeatsContactorInTime)
{
    auto p = mof_plant(70);
    const auto steps = cycles(1);
    const std::vector<double> flux(steps.size(), 0.0);
    std::vector<ThermalSample> trace;
    const auto r = simulate_schedule(steps, flux, 300, p, &trace);
    ASSERT_EQ(r.cycles.size(), 1u);
    EXPECT_TRUE(r.cycles[0].heated);
    EXPECT_LE(r.cycles[0].heat_up_s, 20 * 60.0);
    EXPECT_TRUE(r.cycles[0].feasible);
    EXPECT_EQ(r.feasible_fraction, 1.0);

    double prev = -1;
    for (const auto& s : trace) {
        if (s.phase != Phase::desorb)
            continue;
        EXPECT_GE(s.T_dac, prev - 1e-12);
        prev = s.T_dac;
    }
}

TEST(Simulate, NoDrivingForceNeverHeats)
{
    auto p = mof_plant(0);
    p.T_sand = 100.0;
    const auto steps = cycles(1);
    const std::vector<double> flux(steps.size(), 0.0);
    const auto r = simulate_schedule(steps, flux, 300, p);
    ASSERT_EQ(r.cycles.size(), 1u);
    EXPECT_FALSE(r.cycles[0].heated);
    EXPECT_FALSE(r.cycles[0].feasible);
    EXPECT_EQ(r.feasible_fraction, 0.0);
}

TEST(Simulate, EnergyBalances)
{
    const auto p = mof_plant(20);
    const auto steps = cycles(20);
    std::vector<double> flux(steps.size());
    for (std::size_t t = 0; t < flux.size(); ++t)
        flux[t] = (t / 60) % 2 == 0 ? 2.0 : 0.0;
    const auto r = simulate_schedule(steps, flux, 300, p);
    EXPECT_LT(std::abs(r.energy.residual()), 1e-6 * r.energy.throughput());
    for (double d : r.daily_residual)
        EXPECT_LT(d, 1e-6);
    EXPECT_GT(r.energy.curtailed_j, 0.0);
}

TEST(Simulate, WeakerHeatingNeverHelps)
{
    const auto base = mof_plant(30);
    const auto steps = cycles(30);
    std::vector<double> flux(steps.size(), 0.3);
    double prev = 2.0;
    for (double scale : {1.0, 0.5, 0.3, 0.2, 0.1, 0.05}) {
        auto p = base;
        p.UA_heat *= scale;
        const auto r = simulate_schedule(steps, flux, 300, p);
        EXPECT_LE(r.feasible_fraction, prev) << scale;
        prev = r.feasible_fraction;
    }
    EXPECT_LT(prev, 1.0);
}

TEST(Simulate, RejectsUncalibratedPlant)
{
    ThermalPlant p;
    const auto steps = cycles(1);
    const std::vector<double> flux(steps.size(), 0.0);
    EXPECT_THROW(simulate_schedule(steps, flux, 300, p), ArgumentError);
    const auto q = mof_plant();
    EXPECT_THROW(simulate_schedule(steps, std::vector<double>(3, 0.0), 300, q), ArgumentError);
}

} // namespace
} // namespace heliodac

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
#include "heliodac/plant.hpp"

#include <cmath>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

namespace {

std::span<const double> sub_span(std::span<const double> s, std::size_t offset, std::size_t count)
{
    return s.empty() ? s : s.subspan(offset, count);
}

} // namespace

ScenarioSlice ScenarioSlice::sub(std::size_t offset, std::size_t count) const
{
    if (offset > size() || count > size() - offset)
        throw ArgumentError(fmt::format("slice [{}, {}) outside scenario of {} steps", offset, offset + count, size()));
    ScenarioSlice out = *this;
    out.prices = prices.subspan(offset, count);
    out.carbon_intensity = sub_span(carbon_intensity, offset, count);
    out.flux = flux.subspan(offset, count);
    out.energy_factor = sub_span(energy_factor, offset, count);
    out.capture_factor = sub_span(capture_factor, offset, count);
    out.pv_energy = sub_span(pv_energy, offset, count);
    return out;
}

void validate(const ScenarioSlice& slice)
{
    const auto n = slice.size();
    auto check = [&](std::span<const double> s, const char* name, bool optional) {
        if (s.empty() && optional)
            return;
        if (s.size() != n)
            throw SchemaError(fmt::format("scenario series '{}' has {} steps, prices have {}", name, s.size(), n));
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!std::isfinite(s[i]))
                throw DataError(fmt::format("scenario series '{}' is not finite at step {}", name, i));
    };
    check(slice.prices, "prices", false);
    check(slice.flux, "flux", false);
    check(slice.carbon_intensity, "carbon_intensity", true);
    check(slice.energy_factor, "energy_factor", true);
    check(slice.capture_factor, "capture_factor", true);
    check(slice.pv_energy, "pv_energy", true);
    for (double f : slice.flux)
        if (f < 0)
            throw DataError("thermal flux must be >= 0");
    if (!(slice.incentive >= 0))
        throw ValidationError(fmt::format("incentive must be >= 0, got {}", slice.incentive));
    if (slice.standalone && !(slice.battery_mwh >= 0 && slice.battery_efficiency > 0 && slice.battery_efficiency <= 1))
        throw ValidationError("battery capacity must be >= 0 and efficiency in (0, 1]");
}

ScenarioSlice Scenario::slice() const
{
    ScenarioSlice s;
    s.prices = prices;
    s.carbon_intensity = carbon_intensity;
    s.flux = flux;
    s.energy_factor = energy_factor;
    s.capture_factor = capture_factor;
    s.pv_energy = pv_energy;
    s.incentive = incentive;
    s.carbon_price = carbon_price;
    s.battery_mwh = battery_mwh;
    s.battery_efficiency = battery_efficiency;
    s.standalone = standalone;
    return s;
}

ThermalStore make_store(const StorageParams& s, double T_target)
{
    validate(s);
    return {effective_capacity(s, T_target), s.per_step_retention};
}

void validate(const PlantState& s, const Technology& tech, const ThermalStore& store, const ScenarioSlice& slice)
{
    if (!(s.X >= 0 && s.X <= tech.X_max))
        throw InfeasibleError(fmt::format("initial saturation {} outside [0, {}]", s.X, tech.X_max));
    if (!(s.h >= 0 && s.h <= store.capacity + 1e-9))
        throw InfeasibleError(fmt::format("initial stored heat {} outside [0, {}]", s.h, store.capacity));
    if (s.k != 0 && s.k != 1)
        throw InfeasibleError("cycle flag must be 0 or 1");
    if (slice.standalone && !(s.battery >= 0 && s.battery <= slice.battery_mwh + 1e-9))
        throw InfeasibleError(fmt::format("initial battery {} outside [0, {}]", s.battery, slice.battery_mwh));
}

void ScheduleTotals::add(const StepRecord& r, double heat_per_desorb)
{
    profit += r.profit();
    revenue += r.revenue;
    energy_cost += r.energy_cost;
    cycle_cost += r.cycle_cost;
    captured_t += r.a;
    desorbed_t += r.d;
    energy_mwh += r.energy_mwh;
    electricity_cost += r.wholesale_cost;
    emitted_t += r.emitted_t;
    curtailed_mwh += r.curtailed_mwh;
    cycles += r.z;
    steps += 1;
    if (r.phase == Phase::adsorb) {
        ++adsorb_steps;
    } else if (r.phase == Phase::desorb) {
        ++desorb_steps;
        heat_used_mwh += heat_per_desorb;
    }
}

ScheduleTotals tally(const std::vector<StepRecord>& steps, const Technology& tech)
{
    ScheduleTotals t;
    for (const auto& r : steps)
        t.add(r, tech.H);
    return t;
}

double audit_profit(const Schedule& schedule, const ScenarioSlice& slice, const Technology& tech)
{
    if (schedule.steps.size() > slice.size())
        throw ArgumentError("schedule is longer than the scenario");
    double profit = 0.0;
    for (std::size_t t = 0; t < schedule.steps.size(); ++t) {
        const auto& r = schedule.steps[t];
        double p = 0.0;
        if (r.phase == Phase::adsorb)
            p = tech.P_a;
        else if (r.phase == Phase::desorb)
            p = tech.P_d;
        profit += slice.incentive * r.d - slice.price(t) * slice.energy_scale(t) * p - tech.S * r.z;
    }
    return profit;
}

} // namespace heliodac

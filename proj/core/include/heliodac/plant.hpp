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
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "heliodac/dac_model.hpp"
#include "heliodac/solar_thermal.hpp"

namespace heliodac {

inline double adjust_price_carbon(double base_price, double e_t, double rho_e) { return base_price + rho_e * e_t; }

// Non-owning view over aligned per-step inputs. Empty optional spans mean
// "zero carbon", "unit factors" and "grid-connected" respectively.
struct ScenarioSlice {
    std::span<const double> prices;           // USD/MWh, wholesale
    std::span<const double> carbon_intensity; // tCO2/MWh
    std::span<const double> flux;             // MWh/step into storage
    std::span<const double> energy_factor;
    std::span<const double> capture_factor;
    std::span<const double> pv_energy; // MWh/step, stand-alone only
    double incentive = 0.0;            // USD/t
    double carbon_price = 0.0;         // USD/t emitted
    double battery_mwh = 0.0;
    double battery_efficiency = 0.88;
    bool standalone = false;

    std::size_t size() const noexcept { return prices.size(); }

    double price(std::size_t t) const noexcept
    {
        const double e = carbon_intensity.empty() ? 0.0 : carbon_intensity[t];
        return adjust_price_carbon(prices[t], e, carbon_price);
    }
    double carbon(std::size_t t) const noexcept { return carbon_intensity.empty() ? 0.0 : carbon_intensity[t]; }
    double energy_scale(std::size_t t) const noexcept { return energy_factor.empty() ? 1.0 : energy_factor[t]; }
    double capture_scale(std::size_t t) const noexcept { return capture_factor.empty() ? 1.0 : capture_factor[t]; }

    ScenarioSlice sub(std::size_t offset, std::size_t count) const;
};

void validate(const ScenarioSlice& slice);

// Owning storage behind a ScenarioSlice.
struct Scenario {
    std::vector<double> prices;
    std::vector<double> carbon_intensity;
    std::vector<double> flux;
    std::vector<double> energy_factor;
    std::vector<double> capture_factor;
    std::vector<double> pv_energy;
    double incentive = 0.0;
    double carbon_price = 0.0;
    double battery_mwh = 0.0;
    double battery_efficiency = 0.88;
    bool standalone = false;

    ScenarioSlice slice() const;
};

struct ThermalStore {
    double capacity = 0.0; // MWh usable
    double retention = 1.0;
};

ThermalStore make_store(const StorageParams& s, double T_target);

struct PlantState {
    double X = 0.0;
    double h = 0.0;
    double battery = 0.0;
    int k = 0;
};

void validate(const PlantState& s, const Technology& tech, const ThermalStore& store, const ScenarioSlice& slice);

struct StepRecord {
    Phase phase = Phase::idle;
    std::uint8_t k = 0;
    std::uint8_t z = 0;
    double a = 0.0;
    double d = 0.0;
    double X = 0.0;
    double h = 0.0;
    double battery = 0.0;
    double energy_mwh = 0.0;
    double energy_cost = 0.0; // at the carbon-adjusted price
    double wholesale_cost = 0.0;
    double revenue = 0.0;
    double cycle_cost = 0.0;
    double curtailed_mwh = 0.0;
    double emitted_t = 0.0;

    double profit() const noexcept { return revenue - energy_cost - cycle_cost; }
};

inline PlantState state_after(const StepRecord& r) { return {r.X, r.h, r.battery, r.k}; }

// One rate-saturated step. Returns false when the phase is infeasible at t:
// not enough stored heat to desorb, or not enough stand-alone power.
inline bool advance(const ScenarioSlice& sc, const Technology& tech, const ThermalStore& store, const PlantState& s,
                    std::size_t t, Phase phase, StepRecord& out)
{
    const double available_heat = store.retention * s.h + sc.flux[t];
    double energy = 0.0;
    double a = 0.0;
    double d = 0.0;
    double draw = 0.0;
    if (phase == Phase::adsorb) {
        a = std::min(adsorption_cap(s.X, tech, sc.capture_scale(t)), tech.X_max - s.X);
        energy = sc.energy_scale(t) * tech.P_a;
    } else if (phase == Phase::desorb) {
        if (available_heat + 1e-12 < tech.H)
            return false;
        d = std::min(desorption_cap(s.X, tech), s.X);
        energy = sc.energy_scale(t) * tech.P_d;
        draw = tech.H;
    }

    double battery = s.battery;
    if (sc.standalone) {
        const double pv = sc.pv_energy.empty() ? 0.0 : sc.pv_energy[t];
        if (pv >= energy) {
            battery = std::min(sc.battery_mwh, battery + (pv - energy) * sc.battery_efficiency);
        } else {
            const double deficit = energy - pv;
            if (battery + 1e-12 < deficit)
                return false;
            battery = std::max(0.0, battery - deficit);
        }
    }

    double h = std::max(0.0, available_heat - draw);
    double curtailed = 0.0;
    if (h > store.capacity) {
        curtailed = h - store.capacity;
        h = store.capacity;
    }

    const int k = next_cycle_flag(s.k, phase);
    const double price = sc.price(t);
    out.phase = phase;
    out.k = static_cast<std::uint8_t>(k);
    out.z = static_cast<std::uint8_t>(k == 1 && s.k == 0);
    out.a = a;
    out.d = d;
    out.X = std::clamp(s.X + a - d, 0.0, tech.X_max);
    out.h = h;
    out.battery = battery;
    out.energy_mwh = energy;
    out.energy_cost = price * energy;
    out.wholesale_cost = sc.prices[t] * energy;
    out.revenue = sc.incentive * d;
    out.cycle_cost = out.z ? tech.S : 0.0;
    out.curtailed_mwh = curtailed;
    out.emitted_t = sc.standalone ? 0.0 : sc.carbon(t) * energy;
    return true;
}

struct ScheduleTotals {
    double profit = 0.0;
    double revenue = 0.0;
    double energy_cost = 0.0;
    double cycle_cost = 0.0;
    double captured_t = 0.0;
    double desorbed_t = 0.0;
    double energy_mwh = 0.0;
    double electricity_cost = 0.0; // wholesale, excluding carbon price
    double emitted_t = 0.0;
    double curtailed_mwh = 0.0;
    double heat_used_mwh = 0.0;
    std::int64_t cycles = 0;
    std::int64_t adsorb_steps = 0;
    std::int64_t desorb_steps = 0;
    std::int64_t steps = 0;

    double capacity_factor() const noexcept
    {
        return steps == 0 ? 0.0 : static_cast<double>(adsorb_steps + desorb_steps) / static_cast<double>(steps);
    }
    void add(const StepRecord& r, double heat_per_desorb);
};

struct Schedule {
    PlantState initial;
    std::vector<StepRecord> steps;
    ScheduleTotals totals;

    PlantState final_state() const { return steps.empty() ? initial : state_after(steps.back()); }
};

// Recomputes totals from the per-step records.
ScheduleTotals tally(const std::vector<StepRecord>& steps, const Technology& tech);

// Recomputes the objective from phases, rates and switch flags against the inputs alone.
double audit_profit(const Schedule& schedule, const ScenarioSlice& slice, const Technology& tech);

} // namespace heliodac

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

#include <span>
#include <vector>

#include "heliodac/dac_model.hpp"
#include "heliodac/plant.hpp"
#include "heliodac/solar_thermal.hpp"

namespace heliodac {

// Two lumped nodes: the sand store and the DAC contactor.
struct ThermalPlant {
    double sand_mass_kg = 0.0;
    double sand_specific_heat = 800.0; // J/(kg K)
    double T_sand = 300.0;             // degC, state
    double T_sand_max = 400.0;
    double dac_heat_capacity = 0.0; // J/K
    double T_dac = 20.0;            // degC, state
    double UA_heat = 0.0;           // W/K
    double UA_cool = 0.0;           // W/K
    double T_ambient = 20.0;
    double T_water = 15.0;
    double T_cool_target = 20.0;
    double T_regen = 100.0;
    double T_source_min = 300.0;
    double sim_step_s = 10.0;
    double per_step_retention = 1.0; // sand standing loss per schedule step, above T_source_min
    double required_hold_fraction = 0.25;
    double temperature_tolerance = 0.5;

    double sand_heat_capacity() const noexcept { return sand_mass_kg * sand_specific_heat; }
};

// Calibration inputs. Non-positive values are derived.
struct ThermalTemplate {
    ThermalPlant plant;
    double heat_up_share = 1.0 / 12.0;  // of the usable cycle time, at the minimum source temperature
    double cool_down_share = 1.0 / 6.0; // of the usable cycle time
    double cycle_margin = 0.2;
    double sensible_steps = 1.0; // desorption steps of heat that bring the contactor to T_regen
    double ua_min = 1.0;
    double ua_max = 1e9;
};

ThermalTemplate thermal_template(const StorageParams& storage, double T_target, double h0);

ThermalPlant calibrate(const ThermalTemplate& tpl, const Technology& tech, double schedule_step_s = 300.0);

// Newton heating/cooling time from T0 to T1 against a fixed source/sink.
double newton_time(double capacity, double ua, double T_source, double T0, double T1);

struct CycleRecord {
    std::size_t start_step = 0;
    std::size_t desorb_steps = 0;
    double T_sand_start = 0.0;
    double heat_up_s = 0.0;
    double hold_s = 0.0;
    double cool_down_s = 0.0;
    bool heated = false;
    bool cooled = false;
    bool feasible = false;
};

struct EnergyLedger {
    double flux_in_j = 0.0;
    double curtailed_j = 0.0;
    double standing_loss_j = 0.0;
    double to_dac_j = 0.0;
    double cooling_j = 0.0;
    double sand_change_j = 0.0;
    double dac_change_j = 0.0;

    double residual() const noexcept
    {
        return (sand_change_j + dac_change_j) - (flux_in_j - curtailed_j - standing_loss_j - cooling_j);
    }
    double throughput() const noexcept { return flux_in_j + to_dac_j + cooling_j; }
};

struct CycleReport {
    std::vector<CycleRecord> cycles;
    double feasible_fraction = 1.0;
    EnergyLedger energy;
    std::vector<double> daily_residual; // |residual| / throughput per simulated day
};

struct ThermalSample {
    double time_s;
    double T_sand;
    double T_dac;
    Phase phase;
};

CycleReport simulate_schedule(const std::vector<StepRecord>& schedule, std::span<const double> flux_mwh,
                              double schedule_step_s, const ThermalPlant& plant,
                              std::vector<ThermalSample>* trace = nullptr);

} // namespace heliodac

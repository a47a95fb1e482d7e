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
#include "heliodac/thermo_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

namespace {

constexpr double joules_per_mwh = 3.6e9;

} // namespace

ThermalTemplate thermal_template(const StorageParams& storage, double T_target, double h0)
{
    validate(storage);
    ThermalTemplate tpl;
    auto& p = tpl.plant;
    const double capacity = storage.h_rated * joules_per_mwh / storage.T_unit;
    p.sand_mass_kg = capacity / p.sand_specific_heat;
    p.T_sand_max = T_target;
    p.T_source_min = storage.T_min;
    p.per_step_retention = storage.per_step_retention;
    p.T_sand = capacity > 0 ? storage.T_min + h0 * joules_per_mwh / capacity : storage.T_min;
    return tpl;
}

double newton_time(double capacity, double ua, double T_source, double T0, double T1)
{
    const double d0 = T_source - T0;
    const double d1 = T_source - T1;
    if (d0 == 0.0 || d1 / d0 <= 0.0)
        return std::numeric_limits<double>::infinity();
    return capacity / ua * std::log(d0 / d1);
}

ThermalPlant calibrate(const ThermalTemplate& tpl, const Technology& tech, double schedule_step_s)
{
    ThermalPlant p = tpl.plant;
    if (!(tech.cycle_hours > 0))
        throw CalibrationError("technology cycle length must be positive");
    if (!(p.T_source_min > p.T_regen))
        throw CalibrationError(fmt::format("source temperature {} degC cannot drive regeneration at {} degC",
                                           p.T_source_min, p.T_regen));
    if (!(tpl.heat_up_share > 0 && tpl.cool_down_share > 0 && tpl.heat_up_share + tpl.cool_down_share < 1.0))
        throw CalibrationError("heat-up and cool-down shares must be positive and leave time to hold");

    if (!(p.dac_heat_capacity > 0))
        p.dac_heat_capacity = tpl.sensible_steps * tech.H * joules_per_mwh / (p.T_regen - p.T_cool_target);
    const double C = p.dac_heat_capacity;
    if (!std::isfinite(C) || !(C > 0))
        throw CalibrationError(fmt::format("contactor heat capacity {} J/K cannot be calibrated", C));

    const double usable = tech.cycle_hours * 3600.0 * (1.0 - tpl.cycle_margin);
    const double t_heat = tpl.heat_up_share * usable;
    const double t_cool = tpl.cool_down_share * usable;
    const double tol = p.temperature_tolerance;
    p.UA_heat = C * std::log((p.T_source_min - p.T_cool_target) / (p.T_source_min - (p.T_regen - tol))) / t_heat;
    p.UA_cool = C * std::log((p.T_regen - p.T_water) / (p.T_cool_target + tol - p.T_water)) / t_cool;
    for (double ua : {p.UA_heat, p.UA_cool}) {
        if (!std::isfinite(ua) || ua < tpl.ua_min || ua > tpl.ua_max)
            throw CalibrationError(
                fmt::format("required conductance {} W/K is outside [{}, {}]", ua, tpl.ua_min, tpl.ua_max));
    }
    const double tau = C / std::max(p.UA_heat, p.UA_cool);
    if (p.sim_step_s >= 0.1 * tau) {
        const double step = std::min(schedule_step_s, 0.05 * tau);
        if (!(step > 0))
            throw CalibrationError("no stable integration step for the calibrated conductances");
        p.sim_step_s = step;
    }
    return p;
}

CycleReport simulate_schedule(const std::vector<StepRecord>& schedule, std::span<const double> flux_mwh,
                              double schedule_step_s, const ThermalPlant& plant, std::vector<ThermalSample>* trace)
{
    if (!(plant.sim_step_s > 0) || plant.sim_step_s > schedule_step_s)
        throw ArgumentError(fmt::format("simulation step {} s must be positive and not exceed the schedule step {} s",
                                        plant.sim_step_s, schedule_step_s));
    if (flux_mwh.size() < schedule.size())
        throw ArgumentError("flux series is shorter than the schedule");
    const double Cs = plant.sand_heat_capacity();
    const double Cd = plant.dac_heat_capacity;
    if (!(Cs > 0) || !(Cd > 0) || !(plant.UA_heat > 0) || !(plant.UA_cool > 0))
        throw ArgumentError("thermal plant is not calibrated");
    if (plant.sim_step_s >= 0.1 * Cd / std::max(plant.UA_heat, plant.UA_cool))
        throw ArgumentError(fmt::format("simulation step {} s is unstable for the contactor time constant",
                                        plant.sim_step_s));

    const auto substeps = static_cast<std::size_t>(std::ceil(schedule_step_s / plant.sim_step_s - 1e-9));
    const double dt = schedule_step_s / static_cast<double>(substeps);
    const double keep = std::pow(plant.per_step_retention, dt / schedule_step_s);
    const double tol = plant.temperature_tolerance;
    const auto steps_per_day = std::max<std::size_t>(1, static_cast<std::size_t>(86400.0 / schedule_step_s));

    CycleReport report;
    double Ts = plant.T_sand;
    double Td = plant.T_dac;
    EnergyLedger& total = report.energy;
    EnergyLedger day;
    double day_sand0 = Ts;
    double day_dac0 = Td;
    const double sand0 = Ts;
    const double dac0 = Td;

    constexpr auto none = static_cast<std::size_t>(-1);
    std::size_t open = none;    // desorption run in progress
    std::size_t cooling = none; // finished run waiting for cool-down
    auto& cycles = report.cycles;
    double run_time = 0.0;
    double since_end = 0.0;
    Phase prev = Phase::idle;

    auto close_run = [&](CycleRecord& c) {
        const double duration = static_cast<double>(c.desorb_steps) * schedule_step_s;
        c.feasible = c.heated && c.hold_s + 1e-9 >= plant.required_hold_fraction * duration &&
                     c.T_sand_start + tol >= plant.T_source_min;
    };

    for (std::size_t t = 0; t < schedule.size(); ++t) {
        const Phase phase = schedule[t].phase;
        if (phase == Phase::desorb && prev != Phase::desorb) {
            if (cooling != none) {
                cycles[cooling].feasible = false;
                cooling = none;
            }
            cycles.push_back({});
            open = cycles.size() - 1;
            cycles[open].start_step = t;
            cycles[open].T_sand_start = Ts;
            run_time = 0.0;
        } else if (phase != Phase::desorb && prev == Phase::desorb && open != none) {
            close_run(cycles[open]);
            cooling = cycles[open].feasible ? open : none;
            open = none;
            since_end = 0.0;
        }
        if (open != none)
            ++cycles[open].desorb_steps;

        const double flux_j = flux_mwh[t] * joules_per_mwh / static_cast<double>(substeps);
        for (std::size_t k = 0; k < substeps; ++k) {
            double q_heat = 0.0;
            double q_cool = 0.0;
            if (phase == Phase::desorb) {
                if (Ts > Td && Td < plant.T_regen)
                    q_heat = std::min(plant.UA_heat * (Ts - Td) * dt, Cd * (plant.T_regen - Td));
            } else if (Td > plant.T_cool_target) {
                q_cool = std::min(plant.UA_cool * (Td - plant.T_water) * dt, Cd * (Td - plant.T_cool_target));
            }
            const double loss = Cs * std::max(0.0, Ts - plant.T_source_min) * (1.0 - keep);

            Ts += (flux_j - q_heat - loss) / Cs;
            double curtailed = 0.0;
            if (Ts > plant.T_sand_max) {
                curtailed = (Ts - plant.T_sand_max) * Cs;
                Ts = plant.T_sand_max;
            }
            Td += (q_heat - q_cool) / Cd;

            for (auto* e : {&total, &day}) {
                e->flux_in_j += flux_j;
                e->curtailed_j += curtailed;
                e->standing_loss_j += loss;
                e->to_dac_j += q_heat;
                e->cooling_j += q_cool;
            }

            if (open != none) {
                auto& c = cycles[open];
                run_time += dt;
                if (!c.heated && Td >= plant.T_regen - tol) {
                    c.heated = true;
                    c.heat_up_s = run_time;
                } else if (c.heated) {
                    c.hold_s += dt;
                }
            } else if (cooling != none) {
                since_end += dt;
                if (Td <= plant.T_cool_target + tol) {
                    cycles[cooling].cooled = true;
                    cycles[cooling].cool_down_s = since_end;
                    cooling = none;
                }
            }
            if (trace)
                trace->push_back({(static_cast<double>(t) * static_cast<double>(substeps) + static_cast<double>(k + 1)) * dt,
                                  Ts, Td, phase});
        }
        prev = phase;

        if ((t + 1) % steps_per_day == 0 || t + 1 == schedule.size()) {
            day.sand_change_j = Cs * (Ts - day_sand0);
            day.dac_change_j = Cd * (Td - day_dac0);
            const double through = day.throughput();
            report.daily_residual.push_back(through > 0 ? std::abs(day.residual()) / through : 0.0);
            day = {};
            day_sand0 = Ts;
            day_dac0 = Td;
        }
    }
    // Runs still heating or cooling when the schedule ends are judged on what was observed.
    if (open != none) {
        close_run(cycles[open]);
        cycles[open].cooled = true;
    }
    if (cooling != none)
        cycles[cooling].cooled = true;

    total.sand_change_j = Cs * (Ts - sand0);
    total.dac_change_j = Cd * (Td - dac0);

    std::size_t ok = 0;
    for (const auto& c : cycles)
        ok += c.feasible ? 1 : 0;
    report.feasible_fraction =
        report.cycles.empty() ? 1.0 : static_cast<double>(ok) / static_cast<double>(report.cycles.size());
    return report;
}

} // namespace heliodac

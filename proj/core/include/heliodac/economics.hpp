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

#include <optional>

#include "heliodac/dac_model.hpp"
#include "heliodac/plant.hpp"

namespace heliodac {

enum class Mode { grid, standalone };

struct DesignParams {
    double cp = 3.0;      // MWh/step collector nameplate
    double cr = 1.0;      // concentration ratio
    double T_target = 400.0;
    double h_rated = 70.0; // MWh per 100 degC
    double pv_kw = 0.0;
    double battery_kwh = 0.0;
};

void validate(const DesignParams& d, Mode mode);

struct CostModel {
    double unit_capex_cst = 8.3e5;     // USD per MWh/step of cp at cr = 1
    double unit_capex_storage = 5.0;   // USD/kWh
    double unit_capex_dac = 710.0;     // USD per t/yr of capacity
    double unit_capex_pv = 1000.0;     // USD/kW
    double unit_capex_battery = 300.0; // USD/kWh
    std::optional<double> sorbent_om_per_cycle; // USD; defaults to the technology's switch cost
    double discount_rate = 0.07;
    int lifetime_years = 20;
    double scaling_discount = 0.15;
    double dac_module_t = 6000.0;
};

void validate(const CostModel& m);

double capex_collector(double cp, double cr, const CostModel& m);
double capex_solar(double cp, double cr, double h_rated, const CostModel& m);
double capex_dac(double annual_capacity_t, const CostModel& m);
double annualize(double capex, double rate, int years);
double capture_efficiency(double captured, double emitted);
double payback_years(double capex, double annual_profit);

struct CostBreakdown {
    double dac_capex = 0.0;  // annualized
    double sorbent_om = 0.0; // per year
    double electricity = 0.0; // per year; annualized PV and battery in stand-alone mode
    double thermal = 0.0;     // annualized collectors and storage
    double total = 0.0;
    double total_capex = 0.0;
    double net_co2 = 0.0; // t/yr
    double lco2 = 0.0;    // USD/t
    double share_dac_capex = 0.0;
    double share_sorbent_om = 0.0;
    double share_electricity = 0.0;
    double share_thermal = 0.0;
    double annual_profit = 0.0;
    double payback_years = 0.0;
    double capture_efficiency = 0.0;
};

struct PlantEconomics {
    const DesignParams& design;
    const Technology& tech;
    double annual_capacity_t = 6000.0;
    double step_seconds = 300.0;
    Mode mode = Mode::grid;
};

// Totals covering less or more than a year are scaled to one year.
CostBreakdown lco2(const ScheduleTotals& totals, const PlantEconomics& plant, const CostModel& model);

} // namespace heliodac

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
#include "heliodac/economics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

void validate(const DesignParams& d, Mode mode)
{
    if (!(d.cp > 0))
        throw DesignError(fmt::format("collector capacity must be positive, got {}", d.cp));
    if (!(d.cr >= 1))
        throw DesignError(fmt::format("concentration ratio must be >= 1, got {}", d.cr));
    if (!(d.T_target >= 300))
        throw DesignError(fmt::format("target temperature must be >= 300 degC, got {}", d.T_target));
    if (!(d.h_rated >= 0))
        throw DesignError("storage rating must be >= 0");
    if (!(d.pv_kw >= 0 && d.battery_kwh >= 0))
        throw DesignError("PV and battery sizes must be >= 0");
    if (mode == Mode::grid && (d.pv_kw > 0 || d.battery_kwh > 0))
        throw DesignError("PV and battery sizing only applies in stand-alone mode");
}

void validate(const CostModel& m)
{
    if (!(m.unit_capex_cst >= 0 && m.unit_capex_storage >= 0 && m.unit_capex_dac >= 0 && m.unit_capex_pv >= 0 &&
          m.unit_capex_battery >= 0))
        throw ValidationError("unit costs must be >= 0");
    if (m.sorbent_om_per_cycle && !(*m.sorbent_om_per_cycle >= 0))
        throw ValidationError("sorbent and O&M cost per cycle must be >= 0");
    if (!(m.discount_rate >= 0 && m.discount_rate < 1))
        throw ValidationError("discount rate must be in [0, 1)");
    if (m.lifetime_years < 1)
        throw ValidationError("lifetime must be at least one year");
    if (!(m.scaling_discount >= 0 && m.scaling_discount < 1) || !(m.dac_module_t > 0))
        throw ValidationError("scaling discount must be in [0, 1) with a positive module size");
}

double capex_collector(double cp, double cr, const CostModel& m)
{
    const double size = cp * cr;
    if (size <= 0)
        return 0.0;
    return m.unit_capex_cst * size * std::pow(1.0 - m.scaling_discount, std::log2(size));
}

double capex_solar(double cp, double cr, double h_rated, const CostModel& m)
{
    return capex_collector(cp, cr, m) + m.unit_capex_storage * h_rated * 1000.0;
}

double capex_dac(double annual_capacity_t, const CostModel& m)
{
    if (annual_capacity_t <= 0)
        return 0.0;
    const double units = std::min(annual_capacity_t, m.dac_module_t) / m.dac_module_t;
    return m.unit_capex_dac * annual_capacity_t * std::pow(1.0 - m.scaling_discount, std::log2(units));
}

double annualize(double capex, double rate, int years)
{
    if (years < 1)
        throw ArgumentError("annualization needs at least one year");
    if (rate == 0.0)
        return capex / years;
    const double g = std::pow(1.0 + rate, years);
    return capex * rate * g / (g - 1.0);
}

double capture_efficiency(double captured, double emitted)
{
    if (!(captured > 0))
        throw ArgumentError("capture efficiency is undefined without captured CO2");
    return 1.0 - emitted / captured;
}

double payback_years(double capex, double annual_profit)
{
    if (annual_profit <= 0)
        return std::numeric_limits<double>::infinity();
    return capex / annual_profit;
}

CostBreakdown lco2(const ScheduleTotals& totals, const PlantEconomics& plant, const CostModel& model)
{
    validate(model);
    if (totals.steps <= 0)
        throw ArgumentError("cost evaluation needs a non-empty schedule");
    const double years = static_cast<double>(totals.steps) * plant.step_seconds / (8760.0 * 3600.0);
    const double per_year = 1.0 / years;
    const auto& d = plant.design;
    const int n = model.lifetime_years;
    const double r = model.discount_rate;

    CostBreakdown out;
    const double dac = capex_dac(plant.annual_capacity_t, model);
    const double solar = capex_solar(d.cp, d.cr, d.h_rated, model);
    double power = 0.0;
    if (plant.mode == Mode::standalone)
        power = model.unit_capex_pv * d.pv_kw + model.unit_capex_battery * d.battery_kwh;
    out.total_capex = dac + solar + power;

    out.dac_capex = annualize(dac, r, n);
    out.thermal = annualize(solar, r, n);
    const double per_cycle = model.sorbent_om_per_cycle.value_or(plant.tech.S);
    out.sorbent_om = per_cycle * static_cast<double>(totals.cycles) * per_year;
    out.electricity = plant.mode == Mode::grid ? totals.energy_cost * per_year : annualize(power, r, n);
    out.total = out.dac_capex + out.sorbent_om + out.electricity + out.thermal;

    const double desorbed = totals.desorbed_t * per_year;
    const double emitted = plant.mode == Mode::grid ? totals.emitted_t * per_year : 0.0;
    out.net_co2 = desorbed - emitted;
    if (out.total <= 0)
        throw ArgumentError("cost evaluation is degenerate: no costs at all");
    if (!(out.net_co2 > 0)) {
        if (desorbed <= 0)
            throw ArgumentError("no CO2 was captured, LCO2 is undefined");
        throw ArgumentError(
            fmt::format("emissions ({:.3f} t/yr) exceed capture ({:.3f} t/yr), LCO2 is undefined", emitted, desorbed));
    }
    out.lco2 = out.total / out.net_co2;
    out.share_dac_capex = out.dac_capex / out.total;
    out.share_sorbent_om = out.sorbent_om / out.total;
    out.share_electricity = out.electricity / out.total;
    out.share_thermal = 1.0 - out.share_dac_capex - out.share_sorbent_om - out.share_electricity;
    out.capture_efficiency = capture_efficiency(desorbed, emitted);
    out.annual_profit = totals.profit * per_year;
    out.payback_years = payback_years(out.total_capex, out.annual_profit);
    return out;
}

} // namespace heliodac

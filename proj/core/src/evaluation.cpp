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
#include "heliodac/evaluation.hpp"

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

void validate(const SiteData& site)
{
    const std::size_t n = site.size();
    if (n == 0)
        throw SchemaError("site has no solar data");
    if (site.step_seconds <= 0)
        throw SchemaError("site step must be positive");
    auto check = [n](const std::vector<double>& v, const char* name) {
        if (!v.empty() && v.size() != n)
            throw SchemaError(fmt::format("{} has {} steps but the solar series has {}", name, v.size(), n));
    };
    check(site.prices, "price series");
    check(site.carbon_intensity, "carbon intensity series");
    check(site.temperature, "ambient temperature series");
    check(site.humidity, "ambient humidity series");
    if (site.temperature.size() != site.humidity.size())
        throw SchemaError("ambient temperature and humidity must both be present or both absent");
}

Technology plant_technology(const ModelSettings& settings, double step_seconds)
{
    PlantSizing sizing = settings.sizing;
    sizing.step_seconds = step_seconds;
    return make_technology(settings.technology, sizing);
}

ThermalStore plant_store(const ModelSettings& settings, const DesignParams& design)
{
    StorageParams storage = settings.storage;
    storage.h_rated = design.h_rated;
    return make_store(storage, design.T_target);
}

Scenario build_scenario(const SiteData& site, const DesignParams& design, const ModelSettings& settings,
                        bool ambient)
{
    validate(site);
    validate(design, settings.mode);
    const std::size_t n = site.size();
    const bool standalone = settings.mode == Mode::standalone;

    Scenario sc;
    sc.incentive = settings.incentive;
    sc.carbon_price = standalone ? 0.0 : settings.carbon_price;
    sc.standalone = standalone;
    sc.battery_efficiency = settings.battery_efficiency;
    sc.battery_mwh = design.battery_kwh / 1000.0;

    if (standalone) {
        sc.prices.assign(n, 0.0);
        const double step_h = static_cast<double>(site.step_seconds) / 3600.0;
        sc.pv_energy.resize(n);
        for (std::size_t t = 0; t < n; ++t)
            sc.pv_energy[t] = site.dni_cf[t] * design.pv_kw / 1000.0 * step_h;
    } else {
        if (site.prices.empty())
            throw DataError("grid mode needs a price series");
        sc.prices = site.prices;
        sc.carbon_intensity = site.carbon_intensity;
    }

    CollectorParams collector = settings.collector;
    collector.cr = design.cr;
    collector.T_target = design.T_target;
    sc.flux = flux_series(site.dni_cf, design.cp, collector, settings.storage.charge_efficiency);

    if (ambient) {
        if (site.temperature.empty())
            throw DataError("ambient corrections requested but the site has no ambient series");
        sc.energy_factor.resize(n);
        sc.capture_factor.resize(n);
        for (std::size_t t = 0; t < n; ++t) {
            const auto f = ambient_factors(settings.technology.capture_model, site.temperature[t], site.humidity[t]);
            sc.energy_factor[t] = f.energy_factor;
            sc.capture_factor[t] = f.capture_factor;
        }
    }
    return sc;
}

Evaluation evaluate(const SiteData& site, const DesignParams& design, const ModelSettings& settings, bool ambient,
                    YearResult* keep)
{
    Evaluation ev;
    ev.design = design;
    ev.tech = plant_technology(settings, static_cast<double>(site.step_seconds));
    ev.store = plant_store(settings, design);
    const Scenario sc = build_scenario(site, design, settings, ambient);

    PlantState initial;
    initial.h = settings.initial_storage_fraction * ev.store.capacity;
    YearResult year = run_year(sc.slice(), ev.tech, ev.store, settings.threshold, initial);
    ev.totals = year.schedule.totals;

    const PlantEconomics plant{design, ev.tech, settings.sizing.annual_capacity_t,
                               static_cast<double>(site.step_seconds), settings.mode};
    const double years = static_cast<double>(ev.totals.steps) * plant.step_seconds / (8760.0 * 3600.0);
    const double emitted = settings.mode == Mode::grid ? ev.totals.emitted_t : 0.0;
    ev.net_co2 = (ev.totals.desorbed_t - emitted) / years;
    ev.total_capex = capex_dac(plant.annual_capacity_t, settings.costs) +
                     capex_solar(design.cp, design.cr, design.h_rated, settings.costs);
    if (settings.mode == Mode::standalone)
        ev.total_capex += settings.costs.unit_capex_pv * design.pv_kw +
                          settings.costs.unit_capex_battery * design.battery_kwh;
    ev.abatement_per_capex = ev.total_capex > 0 ? ev.net_co2 / ev.total_capex : 0.0;
    try {
        ev.cost = lco2(ev.totals, plant, settings.costs);
    } catch (const ArgumentError& e) {
        ev.cost_error = e.what();
    }
    if (keep)
        *keep = std::move(year);
    return ev;
}

} // namespace heliodac

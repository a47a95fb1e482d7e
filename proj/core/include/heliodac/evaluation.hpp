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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heliodac/dac_model.hpp"
#include "heliodac/economics.hpp"
#include "heliodac/scheduler_threshold.hpp"
#include "heliodac/solar_thermal.hpp"
#include "heliodac/timeseries.hpp"

namespace heliodac {

// Aligned inputs for one site. Prices and carbon intensity may be empty in stand-alone runs.
struct SiteData {
    TimePoint start{};
    std::int64_t step_seconds = 300;
    std::vector<double> prices;
    std::vector<double> carbon_intensity;
    std::vector<double> dni_cf;
    std::vector<double> temperature;
    std::vector<double> humidity;

    std::size_t size() const noexcept { return dni_cf.size(); }
};

void validate(const SiteData& site);

struct ModelSettings {
    TechnologySpec technology;
    PlantSizing sizing;
    CollectorParams collector; // cr and T_target are taken from the design
    StorageParams storage;
    ThresholdConfig threshold;
    CostModel costs;
    Mode mode = Mode::grid;
    double incentive = 200.0;
    double carbon_price = 0.0;
    double battery_efficiency = 0.88;
    double initial_storage_fraction = 0.0;
    bool apply_ambient = false;
};

Technology plant_technology(const ModelSettings& settings, double step_seconds);
ThermalStore plant_store(const ModelSettings& settings, const DesignParams& design);
Scenario build_scenario(const SiteData& site, const DesignParams& design, const ModelSettings& settings,
                        bool ambient);

struct Evaluation {
    DesignParams design;
    Technology tech;
    ThermalStore store;
    ScheduleTotals totals;
    std::optional<CostBreakdown> cost;
    std::string cost_error;
    double total_capex = 0.0;
    double net_co2 = 0.0; // t/yr
    double abatement_per_capex = 0.0;
};

Evaluation evaluate(const SiteData& site, const DesignParams& design, const ModelSettings& settings, bool ambient,
                    YearResult* keep = nullptr);

} // namespace heliodac

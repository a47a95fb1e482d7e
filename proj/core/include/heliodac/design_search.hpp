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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "heliodac/evaluation.hpp"

namespace heliodac {

enum class Objective { lco2, abatement_per_capex };

Objective parse_objective(std::string_view name);
std::string_view objective_name(Objective o);

// Candidate values per dimension. An empty list keeps the base design's value.
struct SweepBounds {
    std::vector<double> cp;
    std::vector<double> cr;
    std::vector<double> T_target;
    std::vector<double> h_rated;
    std::vector<double> pv_kw;
    std::vector<double> battery_kwh;
};

// Inclusive range with a fixed step; the last value is max when (max - min) is a multiple of step.
std::vector<double> grid_values(double min, double max, double step);

std::vector<DesignParams> expand_grid(const SweepBounds& bounds, const DesignParams& base);

struct SweepPoint {
    DesignParams design;
    double lco2 = 0.0; // NaN when undefined
    double net_co2 = 0.0;
    double capacity_factor = 0.0;
    double abatement_per_capex = 0.0;
    double total_capex = 0.0;
    double profit = 0.0;
    std::string error;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::size_t argmin = 0;
    Objective objective = Objective::lco2;
};

// Lower is better; undefined points score +inf.
double objective_score(const SweepPoint& p, Objective o);

// Strict weak order used to pick the argmin: score, then CAPEX, then parameters.
bool better_point(const SweepPoint& a, const SweepPoint& b, Objective o);

std::size_t select_argmin(const std::vector<SweepPoint>& points, Objective o);

inline constexpr std::size_t default_sweep_budget = 500;

SweepResult sweep(const SiteData& site, const ModelSettings& settings, const SweepBounds& bounds,
                  const DesignParams& base, Objective objective, std::size_t jobs,
                  std::size_t budget = default_sweep_budget);

struct IncentivePoint {
    double incentive = 0.0;
    double profit = 0.0; // USD/yr
    double capacity_factor = 0.0;
    double captured_t = 0.0; // t/yr desorbed
    double optimal_h_rated = 0.0;
    double payback_years = 0.0;
};

// Storage options default to the design's rating when empty. Optimal storage maximizes
// annual profit net of annualized storage CAPEX.
std::vector<IncentivePoint> incentive_sweep(const SiteData& site, const ModelSettings& settings,
                                            const DesignParams& design, const std::vector<double>& incentives,
                                            const std::vector<double>& storage_options, std::size_t jobs);

// Indices where profit or capacity factor drops while the incentive rises.
std::vector<std::size_t> monotonicity_breaks(const std::vector<IncentivePoint>& points, double tolerance = 1e-9);

} // namespace heliodac

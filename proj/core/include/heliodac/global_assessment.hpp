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

#include <filesystem>
#include <string>
#include <vector>

#include "heliodac/evaluation.hpp"
#include "heliodac/timeseries.hpp"

namespace heliodac {

struct LocationResult {
    double lat = 0.0;
    double lon = 0.0;
    double lco2 = 0.0;         // NaN when flagged
    double lco2_ambient = 0.0; // NaN when flagged
    double cf_mean = 0.0;
    double cf_daily_std = 0.0;
    double dac_cf = 0.0;
    std::string flag; // empty when the point was assessed

    bool ok() const noexcept { return flag.empty(); }
};

// Mean and population standard deviation of daily mean capacity factors.
struct CfStats {
    double mean = 0.0;
    double daily_std = 0.0;
};
CfStats cf_statistics(const std::vector<double>& cf, std::int64_t step_seconds);

SiteData load_location(const Location& loc, std::int64_t step_seconds);

LocationResult assess_site(double lat, double lon, const SiteData& site, const DesignParams& design,
                           const ModelSettings& settings);

// Runs every point in stand-alone mode, nominal and with ambient corrections.
// A point that cannot be loaded or evaluated is flagged and the run continues.
std::vector<LocationResult> assess(const LocationGrid& grid, const DesignParams& design,
                                   const ModelSettings& settings, std::size_t jobs, std::int64_t step_seconds = 300);

struct ThresholdShare {
    double threshold = 0.0;
    std::size_t count = 0;
    double fraction = 0.0;
};

// lco2 >= c0 + c1*cf + c2*cf^2 for every assessed point.
struct QuadraticBound {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double operator()(double cf) const noexcept { return c0 + c1 * cf + c2 * cf * cf; }
};

struct GlobalSummary {
    std::size_t total = 0;
    std::size_t assessed = 0;
    std::vector<ThresholdShare> below;
    std::vector<LocationResult> best;
    QuadraticBound lower_bound;
};

GlobalSummary summarize(const std::vector<LocationResult>& results, const std::vector<double>& thresholds,
                        std::size_t best_n = 10);

QuadraticBound fit_lower_bound(const std::vector<double>& cf, const std::vector<double>& lco2);

struct GridValue {
    double lat = 0.0;
    double lon = 0.0;
    double value = 0.0;
};

struct GridDiff {
    double lat = 0.0;
    double lon = 0.0;
    double difference = 0.0; // NaN when unmatched
    bool matched = false;
};

// a.lco2 - b.value for points whose coordinates agree within tolerance degrees.
std::vector<GridDiff> diff_grid(const std::vector<LocationResult>& a, const std::vector<GridValue>& b,
                                double tolerance = 1e-6);

void write_global_csv(const std::filesystem::path& path, const std::vector<LocationResult>& results);
std::vector<LocationResult> read_global_csv(const std::filesystem::path& path);
// `lat,lon,lco2`
std::vector<GridValue> read_grid_values(const std::filesystem::path& path);
void write_diff_csv(const std::filesystem::path& path, const std::vector<GridDiff>& diffs);

} // namespace heliodac

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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heliodac {

using TimePoint = std::chrono::sys_seconds;

enum class Unit { usd_per_mwh, t_per_mwh, capacity_factor, celsius, rh_fraction };

// Which CSV layout a file follows and which unit its value column carries.
enum class SeriesKind { price, solar, carbon_intensity, ambient_temperature, ambient_humidity };

std::string_view unit_name(Unit unit);
Unit unit_of(SeriesKind kind);

struct TimeSeries {
    TimePoint start{};
    std::int64_t step_seconds = 300;
    std::vector<double> values;
    Unit unit = Unit::usd_per_mwh;

    std::size_t size() const noexcept { return values.size(); }
    TimePoint time_at(std::size_t i) const noexcept
    {
        return start + std::chrono::seconds(step_seconds * static_cast<std::int64_t>(i));
    }
};

struct LoadOptions {
    bool fill_missing = false;
};

TimePoint parse_timestamp(std::string_view text);
std::string format_timestamp(TimePoint t);

// Ambient kinds read the matching column of a `timestamp,temp_c,rh` file.
TimeSeries load_series(const std::filesystem::path& path, SeriesKind kind, const LoadOptions& options = {});

struct AmbientSeries {
    TimeSeries temperature;
    TimeSeries humidity;
};

AmbientSeries load_ambient(const std::filesystem::path& path, const LoadOptions& options = {});

// Writes with shortest round-trip formatting, so load_series(write_series(s)) == s bit for bit.
void write_series(const std::filesystem::path& path, const TimeSeries& series, SeriesKind kind);

struct FuelMixTable {
    TimePoint start{};
    std::int64_t step_seconds = 3600;
    std::vector<std::string> fuels;
    std::vector<std::vector<double>> generation_mw; // [fuel][step]
    std::map<std::string, double> emission_factors; // tCO2/MWh

    std::size_t steps() const noexcept { return generation_mw.empty() ? 0 : generation_mw.front().size(); }
};

// Column `<fuel>_mw` is looked up as `<fuel>` in the emission-factor JSON object.
FuelMixTable load_fuel_mix(const std::filesystem::path& csv_path, const std::filesystem::path& factors_path);
void validate(const FuelMixTable& mix);

TimeSeries carbon_intensity(const FuelMixTable& mix);

TimeSeries resample_repeat(const TimeSeries& s, std::int64_t factor);

// Missing values are NaN. Interior gaps are interpolated, edge gaps hold the nearest value.
TimeSeries fill_missing_linear(const TimeSeries& s);

// Repeats a coarser series onto the master step; finer or incommensurate steps are rejected.
TimeSeries align_to_step(const TimeSeries& s, std::int64_t master_step_seconds);

void check_values(const TimeSeries& s, std::string_view name);

struct Location {
    double lat = 0.0;
    double lon = 0.0;
    std::filesystem::path solar_path;
    std::filesystem::path ambient_path;
    bool is_land = true;
    std::optional<double> cf_mean;
};

struct LocationGrid {
    std::vector<Location> points;
};

// Relative series paths are resolved against the manifest's directory.
LocationGrid load_grid_manifest(const std::filesystem::path& path);

// Keeps land points whose annual mean solar capacity factor exceeds cf_threshold.
// Points without a readable solar series are dropped.
LocationGrid apply_masks(const LocationGrid& grid, double cf_threshold);

} // namespace heliodac

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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heliodac/design_search.hpp"
#include "heliodac/evaluation.hpp"
#include "heliodac/hashing.hpp"

namespace heliodac {

inline constexpr int config_schema_version = 1;

struct ScenarioPaths {
    std::filesystem::path price;
    std::filesystem::path solar;
    std::filesystem::path carbon_intensity;
    std::filesystem::path fuel_mix;
    std::filesystem::path emission_factors;
    std::filesystem::path ambient;
    std::int64_t step_seconds = 300;
    bool fill_missing = false;
};

struct RunConfig {
    std::filesystem::path technologies;
    std::string technology = "MOF";
    ScenarioPaths scenario;
    std::filesystem::path grid_manifest;
    double cf_threshold = 0.15;
    ModelSettings settings;
    DesignParams design;
    SweepBounds bounds;
    std::size_t sweep_budget = default_sweep_budget;
    std::vector<double> incentives;
    std::vector<double> storage_options;
    std::filesystem::path output_dir = "out";
    nlohmann::json raw; // as read, after command-line overrides
};

// Relative paths inside the JSON resolve against base_dir.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::json read_json_file(const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path);

SweepBounds bounds_from_json(const nlohmann::json& j);

SiteData load_site(const RunConfig& cfg);
std::vector<ManifestEntry> input_files(const RunConfig& cfg);

} // namespace heliodac

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
// Shared fixtures and the brute-force reference scheduler used by the test suites.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "heliodac/dac_model.hpp"
#include "heliodac/evaluation.hpp"
#include "heliodac/plant.hpp"
#include "heliodac/timeseries.hpp"

namespace heliodac::testing {

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Bundled data directory, set by the build.
std::filesystem::path data_dir();

TechnologySpec mof_spec();
TechnologySpec aeatpms_spec();
TechnologySpec apdes_spec();

// beta_a1 = 1, beta_d2 = 1, X_max = 1, P_a = P_d = 1, S = 0, H = 1.
Technology toy_tech();
Technology mof_tech(double annual_t = 8760.0, double thermal_mwh_per_t = 4.4);

// Days of 5-minute data starting 2023-06-01: clear-sky-like solar scaled by dni_scale with
// seeded cloud noise, a daily price cycle and mild weather.
SiteData synthetic_site(std::size_t days, double dni_scale, std::uint64_t seed);

// MOF at 6000 t/yr with default costs.
ModelSettings mof_settings(Mode mode = Mode::grid);

// Writes solar.csv and ambient.csv for a stand-alone location; returns the two paths.
std::pair<std::filesystem::path, std::filesystem::path> write_location(const std::filesystem::path& dir,
                                                                       const std::string& name, const SiteData& site);

// Writes a grid-mode site, a copy of the bundled technology file and config.json into dir.
std::filesystem::path write_grid_config(const std::filesystem::path& dir, const SiteData& site);

struct Instance {
    std::vector<double> prices;
    std::vector<double> carbon;
    std::vector<double> flux;
    std::vector<double> energy_factor;
    std::vector<double> capture_factor;
    double incentive = 200.0;
    double carbon_price = 0.0;
    Technology tech;
    ThermalStore store;
    PlantState initial;

    ScenarioSlice slice() const;
};

struct InstanceOptions {
    std::size_t steps = 12;
    double price_min = -20.0;
    double price_max = 160.0;
    double flux_max_in_H = 2.0; // flux drawn from [0, flux_max_in_H * H]
    double storage_in_H = 6.0;
    bool random_start = true;
    bool ambient = false;
    bool carbon = false;
};

Instance random_instance(std::mt19937_64& rng, const Technology& tech, const InstanceOptions& opt = {});

// Maximum profit over all 3^T phase sequences, coded from the model equations without
// the library's step function or pruning.
struct BruteForce {
    double profit = 0.0;
    std::vector<Phase> phases;
};
BruteForce brute_force(const Instance& inst);

} // namespace heliodac::testing

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
#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace heliodac::testing {

namespace fs = std::filesystem;

TempDir::TempDir()
{
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("heliodac-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& text)
{
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path data_dir() { return HELIODAC_TEST_DATA_DIR; }

TechnologySpec mof_spec()
{
    TechnologySpec s;
    s.name = "MOF";
    s.S = 115.60;
    s.P_a = 0.642;
    s.P_d = 0.097;
    s.beta_a1 = 0.2;
    s.beta_a2 = -0.2;
    s.beta_d1 = 0.0;
    s.beta_d2 = 0.4;
    s.cycle_hours = 1.0;
    return s;
}

TechnologySpec aeatpms_spec()
{
    TechnologySpec s;
    s.name = "SI-AEATPMS";
    s.S = 213.36;
    s.P_a = 0.357;
    s.P_d = 0.071;
    s.beta_a1 = 0.00099;
    s.beta_a2 = 0.0;
    s.beta_d1 = 0.0;
    s.beta_d2 = 0.088;
    s.cycle_hours = 89.6;
    return s;
}

TechnologySpec apdes_spec()
{
    TechnologySpec s;
    s.name = "APDES-NFC-FD";
    s.S = 42.02;
    s.P_a = 0.300;
    s.P_d = 0.060;
    s.beta_a1 = 0.009434;
    s.beta_a2 = 0.0;
    s.beta_d1 = 0.0;
    s.beta_d2 = 0.5;
    s.cycle_hours = 9.6;
    return s;
}

Technology toy_tech()
{
    Technology t;
    t.name = "toy";
    t.beta_a1 = 1.0;
    t.beta_d2 = 1.0;
    t.X_max = 1.0;
    t.P_a = 1.0;
    t.P_d = 1.0;
    t.S = 0.0;
    t.H = 1.0;
    t.rate_epsilon = 0.01;
    return t;
}

Technology mof_tech(double annual_t, double thermal_mwh_per_t)
{
    PlantSizing sizing;
    sizing.annual_capacity_t = annual_t;
    sizing.thermal_mwh_per_t = thermal_mwh_per_t;
    return make_technology(mof_spec(), sizing);
}

SiteData synthetic_site(std::size_t days, double dni_scale, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SiteData s;
    s.start = parse_timestamp("2023-06-01T00:00:00Z");
    s.step_seconds = 300;
    const std::size_t n = days * 288;
    double cloud = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double hour = static_cast<double>(t % 288) / 12.0;
        if (t % 36 == 0)
            cloud = 0.6 + 0.4 * u(rng);
        const double sun = std::max(0.0, std::sin((hour - 6.0) / 13.0 * 3.141592653589793));
        s.dni_cf.push_back(std::min(1.0, dni_scale * cloud * std::sqrt(sun)));
        s.prices.push_back(35.0 + 25.0 * std::sin((hour - 10.0) / 24.0 * 6.283185307179586) + 20.0 * u(rng) - 5.0);
        s.carbon_intensity.push_back(0.35 + 0.1 * u(rng));
        s.temperature.push_back(24.0 + 8.0 * sun);
        s.humidity.push_back(0.45 - 0.15 * sun);
    }
    return s;
}

ModelSettings mof_settings(Mode mode)
{
    ModelSettings m;
    m.technology = mof_spec();
    m.sizing.thermal_mwh_per_t = 4.4;
    m.mode = mode;
    return m;
}

std::pair<fs::path, fs::path> write_location(const fs::path& dir, const std::string& name, const SiteData& site)
{
    std::string solar = "timestamp,dni_cf\n";
    std::string ambient = "timestamp,temp_c,rh\n";
    for (std::size_t t = 0; t < site.size(); ++t) {
        const auto ts = format_timestamp(site.start + std::chrono::seconds(site.step_seconds * static_cast<std::int64_t>(t)));
        solar += ts + "," + std::to_string(site.dni_cf[t]) + "\n";
        ambient += ts + "," + std::to_string(site.temperature[t]) + "," + std::to_string(site.humidity[t]) + "\n";
    }
    const auto a = dir / (name + "_solar.csv");
    const auto b = dir / (name + "_ambient.csv");
    write_text(a, solar);
    write_text(b, ambient);
    return {a, b};
}

fs::path write_grid_config(const fs::path& dir, const SiteData& site)
{
    std::string price = "timestamp,price_usd_per_mwh\n";
    std::string carbon = "timestamp,carbon_intensity_t_per_mwh\n";
    for (std::size_t t = 0; t < site.size(); ++t) {
        const auto ts = format_timestamp(site.start + std::chrono::seconds(site.step_seconds * static_cast<std::int64_t>(t)));
        price += ts + "," + std::to_string(site.prices[t]) + "\n";
        carbon += ts + "," + std::to_string(site.carbon_intensity[t]) + "\n";
    }
    write_text(dir / "price.csv", price);
    write_text(dir / "carbon.csv", carbon);
    const auto [solar, ambient] = write_location(dir, "site", site);
    fs::copy_file(data_dir() / "technologies.json", dir / "technologies.json", fs::copy_options::overwrite_existing);
    const std::string config = R"({
  "schema_version": 1,
  "technologies": "technologies.json",
  "technology": "MOF",
  "incentive": 200,
  "scenario": {"price": "price.csv", "solar": ")" + solar.filename().string() + R"(", "carbon_intensity": "carbon.csv",
               "ambient": ")" + ambient.filename().string() + R"("},
  "sweep": {"cp": [2, 3], "h_rated": 70},
  "incentives": {"values": [0, 200]}
}
)";
    write_text(dir / "config.json", config);
    return dir / "config.json";
}

ScenarioSlice Instance::slice() const
{
    ScenarioSlice s;
    s.prices = prices;
    s.carbon_intensity = carbon;
    s.flux = flux;
    s.energy_factor = energy_factor;
    s.capture_factor = capture_factor;
    s.incentive = incentive;
    s.carbon_price = carbon_price;
    return s;
}

Instance random_instance(std::mt19937_64& rng, const Technology& tech, const InstanceOptions& opt)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Instance inst;
    inst.tech = tech;
    inst.store.capacity = opt.storage_in_H * tech.H;
    inst.store.retention = 0.999 + 0.001 * u(rng);
    for (std::size_t t = 0; t < opt.steps; ++t) {
        inst.prices.push_back(opt.price_min + (opt.price_max - opt.price_min) * u(rng));
        // Half the steps are dark so storage matters.
        inst.flux.push_back(u(rng) < 0.5 ? 0.0 : opt.flux_max_in_H * tech.H * u(rng));
        if (opt.carbon)
            inst.carbon.push_back(0.6 * u(rng));
        if (opt.ambient) {
            inst.energy_factor.push_back(0.8 + 0.6 * u(rng));
            inst.capture_factor.push_back(0.7 + 0.5 * u(rng));
        }
    }
    if (opt.carbon)
        inst.carbon_price = 100.0 * u(rng);
    if (opt.random_start) {
        inst.initial.X = tech.X_max * u(rng);
        inst.initial.h = inst.store.capacity * u(rng);
        inst.initial.k = u(rng) < 0.5 ? 0 : 1;
    }
    return inst;
}

namespace {

struct Walker {
    const Instance& in;
    std::vector<Phase> path;
    BruteForce best{-std::numeric_limits<double>::infinity(), {}};

    void go(std::size_t t, double X, double h, int k, double profit)
    {
        const std::size_t n = in.prices.size();
        if (t == n) {
            if (profit > best.profit) {
                best.profit = profit;
                best.phases = path;
            }
            return;
        }
        const auto& tech = in.tech;
        const double avail = in.store.retention * h + in.flux[t];
        const double price = in.prices[t] + (in.carbon.empty() ? 0.0 : in.carbon[t]) * in.carbon_price;
        const double c = in.energy_factor.empty() ? 1.0 : in.energy_factor[t];
        const double eta = in.capture_factor.empty() ? 1.0 : in.capture_factor[t];
        const double frac = X / tech.X_max;

        for (int choice = 0; choice < 3; ++choice) {
            double nX = X, draw = 0.0, power = 0.0;
            int nk = k;
            if (choice == 1) {
                double cap = eta * (tech.beta_a1 + tech.beta_a2 * frac) * tech.X_max;
                cap = std::max(cap, 0.0);
                nX = X + std::min(cap, tech.X_max - X);
                power = tech.P_a;
                nk = 1;
            } else if (choice == 2) {
                if (avail < tech.H - 1e-12)
                    continue;
                double cap = std::max((tech.beta_d1 + tech.beta_d2 * frac) * tech.X_max, 0.0);
                nX = X - std::min(cap, X);
                power = tech.P_d;
                draw = tech.H;
                nk = 0;
            }
            const double d = choice == 2 ? X - nX : 0.0;
            const double nh = std::min(std::max(avail - draw, 0.0), in.store.capacity);
            const double switch_cost = (nk == 1 && k == 0) ? tech.S : 0.0;
            path.push_back(static_cast<Phase>(choice));
            go(t + 1, nX, nh, nk, profit + in.incentive * d - price * c * power - switch_cost);
            path.pop_back();
        }
    }
};

} // namespace

BruteForce brute_force(const Instance& inst)
{
    Walker w{inst, {}};
    w.go(0, inst.initial.X, inst.initial.h, inst.initial.k, 0.0);
    return w.best;
}

} // namespace heliodac::testing

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
// Generates the bundled synthetic datasets. Output is a pure function of the seed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "heliodac/timeseries.hpp"

namespace fs = std::filesystem;
using heliodac::TimePoint;

namespace {

constexpr double deg = std::numbers::pi / 180.0;

struct Writer {
    explicit Writer(const fs::path& p) : out(p)
    {
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
    }
    std::ofstream out;
};

// Direct-normal capacity factor under clear sky, for a tracking collector.
double clear_sky_dni(double lat, double lon, TimePoint t)
{
    using namespace std::chrono;
    const auto days = floor<std::chrono::days>(t);
    const year_month_day ymd{days};
    const auto jan1 = sys_days{ymd.year() / January / 1};
    const double doy = static_cast<double>((days - jan1).count()) + 1.0;
    const double utc_h = static_cast<double>((t - days).count()) / 3600.0;
    const double decl = 23.44 * deg * std::sin(2.0 * std::numbers::pi * (284.0 + doy) / 365.0);
    const double solar_time = utc_h + lon / 15.0;
    const double omega = (solar_time - 12.0) * 15.0 * deg;
    const double sin_el =
        std::sin(lat * deg) * std::sin(decl) + std::cos(lat * deg) * std::cos(decl) * std::cos(omega);
    if (sin_el <= 0.02)
        return 0.0;
    const double air_mass = 1.0 / sin_el;
    const double dni = 1353.0 * std::pow(0.7, std::pow(air_mass, 0.678));
    return std::min(1.0, dni / 950.0);
}

struct Weather {
    std::mt19937_64 rng;
    double clearness = 1.0;
    int state = 0; // 0 clear, 1 partly cloudy, 2 overcast
    double cloudy_bias = 0.0;

    void new_day()
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double r = u(rng);
        static constexpr double stay[3] = {0.78, 0.45, 0.40};
        if (r > stay[state]) {
            const double q = u(rng) + cloudy_bias;
            state = q < 0.6 ? 0 : (q < 0.88 ? 1 : 2);
        }
        if (state == 0)
            clearness = 0.92 + 0.08 * u(rng);
        else if (state == 1)
            clearness = 0.45 + 0.4 * u(rng);
        else
            clearness = 0.05 + 0.25 * u(rng);
    }
};

std::vector<double> solar_series(double lat, double lon, TimePoint start, std::int64_t step, std::size_t n,
                                 Weather& w)
{
    std::vector<double> cf(n);
    std::normal_distribution<double> noise(0.0, 0.06);
    double ar = 0.0;
    std::int64_t last_day = -1;
    for (std::size_t i = 0; i < n; ++i) {
        const TimePoint t = start + std::chrono::seconds(step * static_cast<std::int64_t>(i));
        const auto day = std::chrono::floor<std::chrono::days>(t + std::chrono::seconds(static_cast<int>(lon * 240)))
                             .time_since_epoch()
                             .count();
        if (day != last_day) {
            w.new_day();
            last_day = day;
        }
        ar = 0.9 * ar + noise(w.rng) * (w.state == 1 ? 2.0 : 0.5);
        const double c = std::clamp(w.clearness + ar, 0.0, 1.0);
        cf[i] = std::round(clear_sky_dni(lat, lon, t) * c * 1e4) / 1e4;
    }
    return cf;
}

struct Ambient {
    std::vector<double> T;
    std::vector<double> RH;
};

Ambient ambient_series(double lat, double lon, TimePoint start, std::size_t hours, std::mt19937_64& rng,
                       double mean_shift)
{
    Ambient a;
    std::normal_distribution<double> noise(0.0, 0.6);
    double ar = 0.0;
    const double hemi = lat >= 0 ? 1.0 : -1.0;
    const double mean = 27.0 - 0.35 * std::abs(lat) + mean_shift;
    const double season = 3.0 + 0.22 * std::abs(lat);
    for (std::size_t h = 0; h < hours; ++h) {
        const double day = static_cast<double>(h) / 24.0;
        const double local_h = std::fmod(static_cast<double>(h) + lon / 15.0 + 48.0, 24.0);
        ar = 0.95 * ar + noise(rng);
        const double seasonal = -hemi * season * std::cos(2.0 * std::numbers::pi * (day - 15.0) / 365.0);
        const double diurnal = -5.5 * std::cos(2.0 * std::numbers::pi * (local_h - 3.0) / 24.0);
        const double T = mean + seasonal + diurnal + ar;
        const double rh = std::clamp(0.55 + 0.18 * std::cos(2.0 * std::numbers::pi * (local_h - 5.0) / 24.0) -
                                         0.006 * (T - mean) - 0.02 * ar,
                                     0.05, 1.0);
        a.T.push_back(std::round(T * 100.0) / 100.0);
        a.RH.push_back(std::round(rh * 1e4) / 1e4);
    }
    return a;
}

void write_column(const fs::path& path, const char* header, TimePoint start, std::int64_t step,
                  const std::vector<double>& v)
{
    Writer w(path);
    w.out << "timestamp," << header << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
        w.out << heliodac::format_timestamp(start + std::chrono::seconds(step * static_cast<std::int64_t>(i))) << ','
              << fmt::format("{}", v[i]) << '\n';
}

void write_ambient(const fs::path& path, TimePoint start, const Ambient& a)
{
    Writer w(path);
    w.out << "timestamp,temp_c,rh\n";
    for (std::size_t i = 0; i < a.T.size(); ++i)
        w.out << heliodac::format_timestamp(start + std::chrono::hours(static_cast<std::int64_t>(i))) << ','
              << fmt::format("{},{}", a.T[i], a.RH[i]) << '\n';
}

struct TxOptions {
    std::uint64_t seed = 20230101;
    double price_mean = 51.0;
    double spike_rate = 0.0025;
    double cloudy_bias = 0.0;
};

void write_technologies(const fs::path& path)
{
    nlohmann::ordered_json doc;
    auto tech = [](const char* name, double S, double Pa, double Pd, double a1, double a2, double d1, double d2,
                   double cycle) {
        return nlohmann::ordered_json{{"name", name},       {"S", S},         {"P_a", Pa},
                                      {"P_d", Pd},          {"beta_a1", a1},  {"beta_a2", a2},
                                      {"beta_d1", d1},      {"beta_d2", d2},  {"cycle_hours", cycle},
                                      {"capture_model", "solid"}};
    };
    doc["technologies"] = {tech("SI-AEATPMS", 213.36, 0.357, 0.071, 0.00099, 0, 0, 0.088, 89.6),
                           tech("APDES-NFC-FD", 42.02, 0.300, 0.060, 0.009434, 0, 0, 0.5, 9.6),
                           tech("MOF", 115.60, 0.642, 0.097, 0.2, -0.2, 0, 0.4, 1.0)};
    Writer w(path);
    w.out << doc.dump(2) << '\n';
}

void write_tx(const fs::path& dir, const TxOptions& opt)
{
    fs::create_directories(dir);
    using namespace std::chrono;
    const TimePoint start = sys_days{year{2023} / January / 1};
    const std::int64_t step = 300;
    const std::size_t n = 365 * 288;
    const double lat = 31.0, lon = -102.0;

    Weather weather{std::mt19937_64(opt.seed)};
    weather.cloudy_bias = opt.cloudy_bias;
    const auto solar = solar_series(lat, lon, start, step, n, weather);
    write_column(dir / "solar.csv", "dni_cf", start, step, solar);

    std::mt19937_64 rng(opt.seed + 1);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> price(n);
    double ar = 0.0;
    double spike = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double day = static_cast<double>(i) / 288.0;
        const double local_h = std::fmod(static_cast<double>(i % 288) / 12.0 - 6.0 + 24.0, 24.0);
        const double summer = std::exp(-std::pow((day - 220.0) / 38.0, 2.0));
        const double winter = std::exp(-std::pow((day - 30.0) / 20.0, 2.0));
        const double evening = std::exp(-std::pow((local_h - 19.0) / 2.2, 2.0));
        const double morning = std::exp(-std::pow((local_h - 7.5) / 1.5, 2.0));
        const double night = local_h < 5.0 || local_h > 23.0 ? 1.0 : 0.0;
        double p = opt.price_mean + 30.0 * summer + 8.0 * winter + (22.0 + 45.0 * summer) * evening +
                   10.0 * morning - 9.0 * night - 22.0 * solar[i];
        ar = 0.985 * ar + 2.2 * noise(rng);
        p += ar;
        if (spike > 1.0) {
            spike *= 0.93;
        } else if (u(rng) < opt.spike_rate * (0.4 + 2.0 * summer + 1.5 * evening)) {
            spike = 150.0 + 1800.0 * std::pow(u(rng), 3.0);
        } else {
            spike = 0.0;
        }
        p += spike;
        if (u(rng) < 0.002 * (1.0 + 3.0 * night))
            p = -5.0 - 25.0 * u(rng);
        price[i] = std::round(p * 100.0) / 100.0;
    }
    write_column(dir / "price.csv", "price_usd_per_mwh", start, step, price);

    const auto amb = ambient_series(lat, lon, start, 365 * 24, rng, -1.0);
    write_ambient(dir / "ambient.csv", start, amb);

    // 15-minute fuel mix; intensity follows net load.
    {
        Writer w(dir / "fuel_mix.csv");
        w.out << "timestamp,gas_mw,coal_mw,nuclear_mw,wind_mw,solar_mw\n";
        double wind_ar = 0.0;
        for (std::size_t q = 0; q < n / 3; ++q) {
            const double day = static_cast<double>(q) / 96.0;
            const double local_h = std::fmod(static_cast<double>(q % 96) / 4.0 - 6.0 + 24.0, 24.0);
            const double load = 42000.0 + 14000.0 * std::exp(-std::pow((day - 215.0) / 45.0, 2.0)) +
                                9000.0 * std::sin(std::numbers::pi * std::clamp((local_h - 6.0) / 16.0, 0.0, 1.0));
            wind_ar = 0.995 * wind_ar + 350.0 * noise(rng);
            const double wind = std::clamp(11000.0 + 4000.0 * (local_h < 8 || local_h > 20) + wind_ar, 500.0, 26000.0);
            const double sol = 14000.0 * solar[q * 3];
            const double nuclear = 5000.0;
            const double rest = std::max(0.0, load - wind - sol - nuclear);
            const double coal = std::min(rest, 12000.0 + 2000.0 * noise(rng) * 0.1);
            const double gas = std::max(0.0, rest - coal);
            w.out << heliodac::format_timestamp(start + seconds(900 * static_cast<std::int64_t>(q)))
                  << fmt::format(",{:.1f},{:.1f},{:.1f},{:.1f},{:.1f}\n", gas, std::max(0.0, coal), nuclear, wind, sol);
        }
    }
    {
        Writer w(dir / "emission_factors.json");
        w.out << R"({"gas": 0.4, "coal": 0.95, "nuclear": 0.0, "wind": 0.0, "solar": 0.0})" << '\n';
    }
}

struct GlobalOptions {
    std::uint64_t seed = 7;
    std::size_t days = 365;
};

void write_global(const fs::path& dir, const GlobalOptions& opt)
{
    fs::create_directories(dir / "solar");
    fs::create_directories(dir / "ambient");
    using namespace std::chrono;
    const TimePoint start = sys_days{year{2023} / January / 1};
    struct Site {
        double lat, lon, cloudy;
        bool land;
    };
    // Deserts, temperate and tropical land, two ocean cells and one cloudy high-latitude cell.
    const std::vector<Site> sites{
        {23.5, 12.5, -0.45, true},  {25.0, 45.0, -0.40, true},  {-24.5, 134.0, -0.40, true},
        {-23.0, -69.0, -0.50, true}, {35.0, -115.5, -0.35, true}, {31.0, -102.0, -0.20, true},
        {40.5, -3.5, -0.10, true},  {28.0, 77.0, 0.00, true},   {-15.0, -47.5, 0.05, true},
        {48.5, 2.5, 0.25, true},    {10.0, -30.0, -0.30, false}, {-40.0, 160.0, 0.10, false},
        {60.0, 25.0, 0.40, true},   {1.5, 110.0, 0.35, true},   {-30.0, 25.0, -0.25, true},
        {19.5, 79.5, 0.10, true}};
    std::mt19937_64 rng(opt.seed);
    Writer grid(dir / "grid.csv");
    grid.out << "lat,lon,solar_path,ambient_path,is_land\n";
    Writer geo(dir / "geothermal_lco2.csv");
    geo.out << "lat,lon,lco2\n";
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto& s = sites[i];
        const auto solar_name = fmt::format("solar/p{:02d}.csv", i);
        const auto amb_name = fmt::format("ambient/p{:02d}.csv", i);
        Weather w{std::mt19937_64(opt.seed * 1000 + i)};
        w.cloudy_bias = s.cloudy;
        const auto cf = solar_series(s.lat, s.lon, start, 3600, opt.days * 24, w);
        write_column(dir / solar_name, "dni_cf", start, 3600, cf);
        write_ambient(dir / amb_name, start, ambient_series(s.lat, s.lon, start, opt.days * 24, rng, 0.0));
        grid.out << fmt::format("{},{},{},{},{}\n", s.lat, s.lon, solar_name, amb_name, s.land ? 1 : 0);
        std::uniform_real_distribution<double> u(150.0, 450.0);
        geo.out << fmt::format("{},{},{:.1f}\n", s.lat, s.lon, u(rng));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generate the bundled synthetic sample data"};
    fs::path out = "data";
    TxOptions tx;
    GlobalOptions global;
    app.add_option("--out", out, "Data directory");
    app.add_option("--seed", tx.seed, "Seed for the TX-like sample");
    app.add_option("--price-mean", tx.price_mean, "Base price level, USD/MWh");
    app.add_option("--cloudy-bias", tx.cloudy_bias, "Shift toward cloudy days in the TX-like sample");
    app.add_option("--global-days", global.days, "Days per global grid series");
    CLI11_PARSE(app, argc, argv);
    try {
        fs::create_directories(out);
        write_technologies(out / "technologies.json");
        write_tx(out / "sample" / "tx", tx);
        write_global(out / "sample" / "global", global);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}

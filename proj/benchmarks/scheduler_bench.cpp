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
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "heliodac/scheduler_exact.hpp"
#include "heliodac/scheduler_threshold.hpp"
#include "heliodac/solar_thermal.hpp"
#include "heliodac/thermo_sim.hpp"

namespace {

using namespace heliodac;

Technology mof()
{
    TechnologySpec spec;
    spec.name = "MOF";
    spec.S = 115.60;
    spec.P_a = 0.642;
    spec.P_d = 0.097;
    spec.beta_a1 = 0.2;
    spec.beta_a2 = -0.2;
    spec.beta_d2 = 0.4;
    spec.cycle_hours = 1.0;
    return make_technology(spec, PlantSizing{});
}

struct Days {
    std::vector<double> prices;
    std::vector<double> dni;
    std::vector<double> flux;
};

Days days(std::size_t n_days)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 12.0);
    std::uniform_real_distribution<double> cloud(0.3, 1.0);
    Days d;
    for (std::size_t day = 0; day < n_days; ++day) {
        const double c = cloud(rng);
        for (int i = 0; i < 288; ++i) {
            const double hour = i / 12.0;
            const double sun = std::max(0.0, std::sin((hour - 6.0) / 12.0 * 3.14159265358979));
            d.dni.push_back(sun * c);
            d.prices.push_back(45.0 + 25.0 * std::sin((hour - 9.0) / 24.0 * 6.2831853) + noise(rng));
        }
    }
    CollectorParams p;
    d.flux = flux_series(d.dni, 3.0, p, 0.95);
    return d;
}

ScenarioSlice slice(const Days& d, std::size_t n)
{
    ScenarioSlice s;
    s.prices = std::span<const double>(d.prices).first(n);
    s.flux = std::span<const double>(d.flux).first(n);
    s.incentive = 200.0;
    return s;
}

ThermalStore store()
{
    return make_store(StorageParams{}, 400.0);
}

void BM_SolveExact(benchmark::State& state)
{
    const auto d = days(1);
    const auto tech = mof();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_exact(slice(d, 130 + n).sub(130, n), tech, store()));
}
BENCHMARK(BM_SolveExact)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_OptimizeChunk(benchmark::State& state)
{
    const auto d = days(2);
    const auto tech = mof();
    const ThresholdConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_chunk(slice(d, 576), tech, store(), cfg, {}, 288));
}
BENCHMARK(BM_OptimizeChunk)->Unit(benchmark::kMillisecond);

void BM_RunYear(benchmark::State& state)
{
    const auto n_days = static_cast<std::size_t>(state.range(0));
    const auto d = days(n_days);
    const auto tech = mof();
    const ThresholdConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_year(slice(d, n_days * 288), tech, store(), cfg));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n_days * 288));
}
BENCHMARK(BM_RunYear)->Arg(7)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SimulateSchedule(benchmark::State& state)
{
    const auto d = days(7);
    const auto tech = mof();
    const auto year = run_year(slice(d, d.prices.size()), tech, store(), ThresholdConfig{});
    const auto plant = calibrate(thermal_template(StorageParams{}, 400.0, 0.0), tech);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_schedule(year.schedule.steps, d.flux, 300.0, plant));
}
BENCHMARK(BM_SimulateSchedule)->Unit(benchmark::kMillisecond);

void BM_FluxSeries(benchmark::State& state)
{
    const auto d = days(365);
    CollectorParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(flux_series(d.dni, 3.0, p, 0.95));
}
BENCHMARK(BM_FluxSeries)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

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
#include "cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "heliodac/config.hpp"
#include "heliodac/design_search.hpp"
#include "heliodac/error.hpp"
#include "heliodac/evaluation.hpp"
#include "heliodac/global_assessment.hpp"
#include "heliodac/hashing.hpp"
#include "heliodac/parallel.hpp"
#include "heliodac/scheduler_exact.hpp"
#include "heliodac/scheduler_threshold.hpp"
#include "heliodac/thermo_sim.hpp"

namespace heliodac::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Common {
    std::string config;
    std::optional<std::size_t> jobs;
    std::string tech;
    std::optional<double> incentive;
    std::string out;
};

struct Loaded {
    RunConfig cfg;
    json hashed; // config as used, minus output_dir
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config, "run configuration (JSON)")->required();
    sub->add_option("--jobs", c.jobs, "worker threads (default: HELIODAC_JOBS or logical cores)");
    sub->add_option("--tech", c.tech, "technology name from the technology file");
    sub->add_option("--incentive", c.incentive, "CO2 incentive, USD/t");
    sub->add_option("--out", c.out, "output directory (overrides output_dir)");
}

std::size_t jobs_of(const Common& c)
{
    return resolve_jobs(c.jobs);
}

Loaded load(const Common& c)
{
    jobs_of(c);
    const fs::path path = c.config;
    if (!fs::is_regular_file(path))
        throw ValidationError(fmt::format("config file not found: {}", path.string()));
    json j = read_json_file(path);
    if (!j.is_object())
        throw SchemaError(fmt::format("{}: config must be a JSON object", path.string()));
    if (!c.tech.empty())
        j["technology"] = c.tech;
    if (c.incentive)
        j["incentive"] = *c.incentive;
    if (!c.out.empty())
        j["output_dir"] = fs::absolute(c.out).string();
    Loaded l{config_from_json(j, fs::absolute(path).parent_path()), j};
    l.hashed.erase("output_dir");
    return l;
}

fs::path prepare_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
    return dir;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw Error(fmt::format("cannot write {}", path.string()));
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

json design_json(const DesignParams& d)
{
    return {{"cp", d.cp},       {"cr", d.cr},       {"T_target", d.T_target},
            {"h_rated", d.h_rated}, {"pv_kw", d.pv_kw}, {"battery_kwh", d.battery_kwh}};
}

json totals_json(const ScheduleTotals& t)
{
    return {{"steps", t.steps},
            {"profit", t.profit},
            {"revenue", t.revenue},
            {"energy_cost", t.energy_cost},
            {"cycle_cost", t.cycle_cost},
            {"captured_t", t.captured_t},
            {"desorbed_t", t.desorbed_t},
            {"emitted_t", t.emitted_t},
            {"energy_mwh", t.energy_mwh},
            {"electricity_cost", t.electricity_cost},
            {"curtailed_mwh", t.curtailed_mwh},
            {"heat_used_mwh", t.heat_used_mwh},
            {"cycles", t.cycles},
            {"adsorb_steps", t.adsorb_steps},
            {"desorb_steps", t.desorb_steps},
            {"capacity_factor", t.capacity_factor()}};
}

json plant_json(const Technology& tech, const ThermalStore& store)
{
    return {{"technology", tech.name}, {"X_max_t", tech.X_max},    {"P_a_mwh", tech.P_a},
            {"P_d_mwh", tech.P_d},     {"heat_per_desorb_mwh", tech.H}, {"switch_cost", tech.S},
            {"storage_capacity_mwh", store.capacity}, {"storage_retention", store.retention}};
}

json cost_json(const CostBreakdown& c)
{
    auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    return {{"lco2", c.lco2},
            {"net_co2_t", c.net_co2},
            {"annual", {{"dac_capex", c.dac_capex},
                        {"sorbent_om", c.sorbent_om},
                        {"electricity", c.electricity},
                        {"thermal", c.thermal},
                        {"total", c.total}}},
            {"shares", {{"dac_capex", c.share_dac_capex},
                        {"sorbent_om", c.share_sorbent_om},
                        {"electricity", c.share_electricity},
                        {"thermal", c.share_thermal}}},
            {"total_capex", c.total_capex},
            {"annual_profit", c.annual_profit},
            {"payback_years", finite(c.payback_years)},
            {"capture_efficiency", c.capture_efficiency}};
}

std::string hourly_profile(const SiteData& site, const std::vector<StepRecord>& steps)
{
    struct Bin {
        double n = 0, adsorb = 0, desorb = 0, energy = 0, desorbed = 0, price = 0;
    };
    std::array<Bin, 24> bins{};
    for (std::size_t t = 0; t < steps.size(); ++t) {
        const auto secs = site.start.time_since_epoch().count() + site.step_seconds * static_cast<std::int64_t>(t);
        const auto hour = static_cast<std::size_t>(((secs % 86400) + 86400) % 86400 / 3600);
        auto& b = bins[hour];
        const auto& r = steps[t];
        b.n += 1;
        b.adsorb += r.phase == Phase::adsorb;
        b.desorb += r.phase == Phase::desorb;
        b.energy += r.energy_mwh;
        b.desorbed += r.d;
        b.price += site.prices.empty() ? 0.0 : site.prices[t];
    }
    std::string text = "hour,adsorb,desorb,idle,energy_mwh,desorbed_t,price\n";
    for (std::size_t h = 0; h < bins.size(); ++h) {
        const auto& b = bins[h];
        const double n = std::max(b.n, 1.0);
        text += fmt::format("{},{},{},{},{},{},{}\n", h, b.adsorb / n, b.desorb / n, (b.n - b.adsorb - b.desorb) / n,
                            b.energy / n, b.desorbed / n, b.price / n);
    }
    return text;
}

void finish(const fs::path& dir, const Loaded& l, const std::vector<ManifestEntry>& extra_inputs,
            const std::vector<fs::path>& outputs, std::string_view command)
{
    auto inputs = input_files(l.cfg);
    inputs.insert(inputs.end(), extra_inputs.begin(), extra_inputs.end());
    write_manifest(dir, make_manifest(l.hashed, inputs, outputs, command));
}

int run_optimize(const Common& c, std::ostream& out)
{
    const auto l = load(c);
    const auto& cfg = l.cfg;
    const auto site = load_site(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    YearResult year;
    const auto ev = evaluate(site, cfg.design, cfg.settings, cfg.settings.apply_ambient, &year);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto dir = prepare_dir(cfg.output_dir);
    const auto schedule_path = dir / "schedule.csv";
    const auto summary_path = dir / "summary.json";
    const auto profile_path = dir / "hourly_profile.csv";
    write_schedule_csv(schedule_path, year.schedule);
    json summary = {{"mode", cfg.settings.mode == Mode::grid ? "grid" : "standalone"},
                    {"incentive", cfg.settings.incentive},
                    {"carbon_price", cfg.settings.carbon_price},
                    {"apply_ambient", cfg.settings.apply_ambient},
                    {"design", design_json(cfg.design)},
                    {"plant", plant_json(ev.tech, ev.store)},
                    {"chunks", year.chunks.size()}};
    summary.update(totals_json(ev.totals));
    if (ev.cost) {
        summary["lco2"] = ev.cost->lco2;
        summary["costs"] = cost_json(*ev.cost);
    } else {
        summary["lco2"] = nullptr;
        summary["lco2_error"] = ev.cost_error;
    }
    write_json(summary_path, summary);
    write_file(profile_path, hourly_profile(site, year.schedule.steps));
    finish(dir, l, {}, {schedule_path, summary_path, profile_path}, "optimize");

    out << fmt::format("optimize: {} steps in {:.1f} s, profit {:.0f} USD, capacity factor {:.3f}, ", ev.totals.steps,
                       secs, ev.totals.profit, ev.totals.capacity_factor());
    if (ev.cost)
        out << fmt::format("LCO2 {:.1f} USD/t\n", ev.cost->lco2);
    else
        out << "LCO2 undefined (" << ev.cost_error << ")\n";
    out << "wrote " << dir.string() << "\n";
    return 0;
}

int run_exact(const Common& c, std::size_t horizon, std::size_t offset, std::ostream& out)
{
    if (horizon == 0 || horizon > max_exact_horizon)
        throw ArgumentError(
            fmt::format("--horizon must be in [1, {}] for exhaustive enumeration, got {}", max_exact_horizon, horizon));
    const auto l = load(c);
    const auto& cfg = l.cfg;
    const auto site = load_site(cfg);
    if (offset + horizon > site.size())
        throw ArgumentError(fmt::format("--offset {} + --horizon {} exceeds the {} scenario steps", offset, horizon,
                                        site.size()));
    const auto scenario = build_scenario(site, cfg.design, cfg.settings, cfg.settings.apply_ambient);
    const auto slice = scenario.slice().sub(offset, horizon);
    const auto tech = plant_technology(cfg.settings, static_cast<double>(site.step_seconds));
    const auto store = plant_store(cfg.settings, cfg.design);
    PlantState initial;
    initial.h = cfg.settings.initial_storage_fraction * store.capacity;

    auto exact = solve_exact(slice, tech, store, initial);
    exact.totals = tally(exact.steps, tech);
    const auto heuristic = optimize_chunk(slice, tech, store, cfg.settings.threshold, initial);

    const auto dir = prepare_dir(cfg.output_dir);
    const auto schedule_path = dir / "exact_schedule.csv";
    const auto summary_path = dir / "exact_summary.json";
    write_schedule_csv(schedule_path, exact);
    json summary = {{"offset", offset},
                    {"horizon", horizon},
                    {"plant", plant_json(tech, store)},
                    {"audited_profit", audit_profit(exact, slice, tech)},
                    {"threshold_policy", {{"profit", heuristic.profit}, {"threshold", heuristic.lambda_opt}}}};
    summary.update(totals_json(exact.totals));
    write_json(summary_path, summary);
    finish(dir, l, {}, {schedule_path, summary_path}, "exact");

    out << fmt::format("exact: {} steps from {}, profit {:.4f} USD (threshold policy {:.4f})\n", horizon, offset,
                       exact.totals.profit, heuristic.profit);
    return 0;
}

int run_verify(const Common& c, const std::string& schedule_file, double min_feasible, double tolerance,
               std::ostream& out)
{
    if (!(min_feasible >= 0.0 && min_feasible <= 1.0))
        throw ArgumentError(fmt::format("--min-feasible must be in [0, 1], got {}", min_feasible));
    const auto l = load(c);
    const auto& cfg = l.cfg;
    if (!fs::is_regular_file(schedule_file))
        throw ValidationError(fmt::format("schedule file not found: {}", schedule_file));
    const auto site = load_site(cfg);
    const auto scenario = build_scenario(site, cfg.design, cfg.settings, cfg.settings.apply_ambient);
    const auto slice = scenario.slice();
    const double step_s = static_cast<double>(site.step_seconds);
    const auto tech = plant_technology(cfg.settings, step_s);
    const auto store = plant_store(cfg.settings, cfg.design);

    auto schedule = read_schedule_csv(schedule_file);
    schedule.initial.h = cfg.settings.initial_storage_fraction * store.capacity;
    const auto violations = verify_schedule(schedule, slice, tech, store, tolerance);

    StorageParams storage = cfg.settings.storage;
    storage.h_rated = cfg.design.h_rated;
    const auto plant =
        calibrate(thermal_template(storage, cfg.design.T_target, schedule.initial.h), tech, step_s);
    const auto report = simulate_schedule(schedule.steps, slice.flux, step_s, plant);

    const auto dir = prepare_dir(cfg.output_dir);
    const auto cycles_path = dir / "cycles.csv";
    const auto verify_path = dir / "verify.json";
    std::string text = "cycle,start_step,desorb_steps,T_sand_start,heat_up_s,hold_s,cool_down_s,heated,cooled,feasible\n";
    for (std::size_t i = 0; i < report.cycles.size(); ++i) {
        const auto& r = report.cycles[i];
        text += fmt::format("{},{},{},{},{},{},{},{:d},{:d},{:d}\n", i, r.start_step, r.desorb_steps, r.T_sand_start,
                            r.heat_up_s, r.hold_s, r.cool_down_s, r.heated, r.cooled, r.feasible);
    }
    write_file(cycles_path, text);

    double worst_residual = 0.0;
    for (double r : report.daily_residual)
        worst_residual = std::max(worst_residual, r);
    const bool pass = violations.empty() && report.feasible_fraction >= min_feasible;
    json listed = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 50); ++i)
        listed.push_back({{"step", violations[i].step},
                          {"constraint", violations[i].constraint},
                          {"detail", violations[i].detail}});
    const json summary = {{"steps", schedule.steps.size()},
                          {"cycles", report.cycles.size()},
                          {"feasible_fraction", report.feasible_fraction},
                          {"min_feasible", min_feasible},
                          {"constraint_violations", violations.size()},
                          {"violations", listed},
                          {"max_daily_energy_residual", worst_residual},
                          {"pass", pass}};
    write_json(verify_path, summary);
    finish(dir, l, {{"schedule", schedule_file}}, {cycles_path, verify_path}, "verify");

    out << fmt::format("verify: {} cycles, feasible fraction {:.4f} (min {}), {} constraint violations: {}\n",
                       report.cycles.size(), report.feasible_fraction, min_feasible, violations.size(),
                       pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

std::string sweep_csv(const SweepResult& r)
{
    std::string text =
        "cp,cr,T_target,h_rated,pv_kw,battery_kwh,lco2,net_co2,capacity_factor,abatement_per_capex,total_capex,profit,"
        "argmin,error\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& p = r.points[i];
        const auto& d = p.design;
        std::string err = p.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        text += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{:d},{}\n", d.cp, d.cr, d.T_target, d.h_rated, d.pv_kw,
                            d.battery_kwh, std::isnan(p.lco2) ? std::string() : fmt::format("{}", p.lco2), p.net_co2,
                            p.capacity_factor, p.abatement_per_capex, p.total_capex, p.profit, i == r.argmin, err);
    }
    return text;
}

int run_sweep(const Common& c, const std::string& bounds_file, const std::string& objective_name_arg,
              std::ostream& out)
{
    const auto objective = parse_objective(objective_name_arg);
    const auto l = load(c);
    const auto& cfg = l.cfg;
    SweepBounds bounds = cfg.bounds;
    std::size_t budget = cfg.sweep_budget;
    std::vector<ManifestEntry> extra;
    if (!bounds_file.empty()) {
        if (!fs::is_regular_file(bounds_file))
            throw ValidationError(fmt::format("bounds file not found: {}", bounds_file));
        const auto j = read_json_file(bounds_file);
        bounds = bounds_from_json(j);
        if (j.contains("budget")) {
            if (!j["budget"].is_number_unsigned())
                throw SchemaError("sweep.budget must be a positive integer");
            budget = j["budget"].get<std::size_t>();
        }
        extra.push_back({"bounds", bounds_file});
    }
    const auto site = load_site(cfg);
    const auto result = sweep(site, cfg.settings, bounds, cfg.design, objective, jobs_of(c), budget);

    const auto dir = prepare_dir(cfg.output_dir);
    const auto csv_path = dir / "sweep.csv";
    const auto summary_path = dir / "sweep_summary.json";
    write_file(csv_path, sweep_csv(result));
    const auto& best = result.points[result.argmin];
    write_json(summary_path, {{"objective", std::string(objective_name(objective))},
                              {"points", result.points.size()},
                              {"argmin", design_json(best.design)},
                              {"lco2", best.lco2},
                              {"abatement_per_capex", best.abatement_per_capex}});
    finish(dir, l, extra, {csv_path, summary_path}, "sweep");

    const auto& d = best.design;
    out << fmt::format("sweep: {} points, best by {}: cp {} cr {} T {} h {} pv {} battery {} (LCO2 {:.1f})\n",
                       result.points.size(), objective_name(objective), d.cp, d.cr, d.T_target, d.h_rated, d.pv_kw,
                       d.battery_kwh, best.lco2);
    return 0;
}

int run_incentives(const Common& c, const std::vector<double>& values, const std::vector<double>& storage,
                   std::ostream& out)
{
    const auto l = load(c);
    const auto& cfg = l.cfg;
    const auto& incentives = values.empty() ? cfg.incentives : values;
    const auto& options = storage.empty() ? cfg.storage_options : storage;
    if (incentives.empty())
        throw ArgumentError("no incentive values: pass --values or set incentives.values");
    const auto site = load_site(cfg);
    const auto points = incentive_sweep(site, cfg.settings, cfg.design, incentives, options, jobs_of(c));
    const auto breaks = monotonicity_breaks(points);

    const auto dir = prepare_dir(cfg.output_dir);
    const auto csv_path = dir / "incentives.csv";
    const auto summary_path = dir / "incentives_summary.json";
    std::string text = "incentive,profit,capacity_factor,captured_t,optimal_h_rated,payback_years\n";
    for (const auto& p : points)
        text += fmt::format("{},{},{},{},{},{}\n", p.incentive, p.profit, p.capacity_factor, p.captured_t,
                            p.optimal_h_rated,
                            std::isfinite(p.payback_years) ? fmt::format("{}", p.payback_years) : std::string());
    write_file(csv_path, text);
    write_json(summary_path, {{"points", points.size()}, {"monotonicity_breaks", breaks}});
    finish(dir, l, {}, {csv_path, summary_path}, "incentives");

    out << fmt::format("incentives: {} values, {} monotonicity breaks\n", points.size(), breaks.size());
    return 0;
}

json global_summary_json(const GlobalSummary& s)
{
    json below = json::array();
    for (const auto& b : s.below)
        below.push_back({{"threshold", b.threshold}, {"count", b.count}, {"fraction", b.fraction}});
    json best = json::array();
    for (const auto& r : s.best)
        best.push_back({{"lat", r.lat}, {"lon", r.lon}, {"lco2", r.lco2}, {"cf_mean", r.cf_mean}});
    return {{"total", s.total},
            {"assessed", s.assessed},
            {"below", below},
            {"best", best},
            {"lower_bound", {{"c0", s.lower_bound.c0}, {"c1", s.lower_bound.c1}, {"c2", s.lower_bound.c2}}}};
}

int run_global(const Common& c, const std::vector<double>& thresholds, std::size_t best_n, std::ostream& out)
{
    const auto l = load(c);
    const auto& cfg = l.cfg;
    if (cfg.grid_manifest.empty())
        throw ArgumentError("global needs grid.manifest in the config");
    const auto grid = apply_masks(load_grid_manifest(cfg.grid_manifest), cfg.cf_threshold);
    if (grid.points.empty())
        throw DataError("no locations left after masking");
    const auto results = assess(grid, cfg.design, cfg.settings, jobs_of(c), cfg.scenario.step_seconds);
    const auto summary = summarize(results, thresholds, best_n);

    const auto dir = prepare_dir(cfg.output_dir);
    const auto csv_path = dir / "global.csv";
    const auto summary_path = dir / "global_summary.json";
    write_global_csv(csv_path, results);
    write_json(summary_path, global_summary_json(summary));
    std::vector<ManifestEntry> extra;
    for (const auto& p : grid.points) {
        extra.push_back({"solar", p.solar_path});
        if (!p.ambient_path.empty())
            extra.push_back({"ambient", p.ambient_path});
    }
    finish(dir, l, extra, {csv_path, summary_path}, "global");

    out << fmt::format("global: {} locations, {} assessed\n", summary.total, summary.assessed);
    for (const auto& b : summary.below)
        out << fmt::format("  below {}: {} ({:.1f}%)\n", b.threshold, b.count, 100.0 * b.fraction);
    return 0;
}

int run_diff(const std::string& a, const std::string& b, const std::string& out_dir, double tolerance,
             std::ostream& out)
{
    for (const auto& p : {a, b})
        if (!fs::is_regular_file(p))
            throw ValidationError(fmt::format("file not found: {}", p));
    const auto diffs = diff_grid(read_global_csv(a), read_grid_values(b), tolerance);
    const auto dir = prepare_dir(out_dir);
    const auto csv_path = dir / "diff.csv";
    write_diff_csv(csv_path, diffs);
    write_manifest(dir, make_manifest({{"tolerance", tolerance}}, {{"global", a}, {"reference", b}}, {csv_path}, "diff"));
    std::size_t matched = 0;
    for (const auto& d : diffs)
        matched += d.matched;
    out << fmt::format("diff: {} points, {} matched, {} unmatched\n", diffs.size(), matched, diffs.size() - matched);
    return 0;
}

int run_summarize(const std::string& global_file, const std::vector<double>& thresholds, std::size_t best_n,
                  const std::string& out_dir, std::ostream& out)
{
    if (!fs::is_regular_file(global_file))
        throw ValidationError(fmt::format("file not found: {}", global_file));
    const auto results = read_global_csv(global_file);
    if (results.empty())
        throw DataError(fmt::format("{}: no rows", global_file));
    const auto j = global_summary_json(summarize(results, thresholds, best_n));
    if (out_dir.empty()) {
        out << j.dump(2) << "\n";
        return 0;
    }
    const auto dir = prepare_dir(out_dir);
    const auto path = dir / "summary.json";
    write_json(path, j);
    write_manifest(dir, make_manifest({{"thresholds", thresholds}, {"best", best_n}}, {{"global", global_file}},
                                      {path}, "summarize"));
    out << "wrote " << path.string() << "\n";
    return 0;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scheduling and evaluation of solar-thermal direct air capture", "heliodac"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "heliodac 0.1.0");

    Common common;
    auto* optimize = app.add_subcommand("optimize", "full-year threshold schedule, costs and hourly profile");
    add_common(optimize, common);

    std::size_t horizon = 0;
    std::size_t offset = 0;
    auto* exact = app.add_subcommand("exact", "exhaustive optimum over a short horizon");
    exact->add_option("--horizon", horizon, "steps to enumerate (at most 16)")->required();
    exact->add_option("--offset", offset, "first scenario step");
    add_common(exact, common);

    std::string schedule_file;
    double min_feasible = 0.99;
    double tolerance = 1e-6;
    auto* verify = app.add_subcommand("verify", "check a schedule against constraints and the thermal model");
    verify->add_option("--schedule", schedule_file, "schedule CSV written by optimize")->required();
    verify->add_option("--min-feasible", min_feasible, "minimum feasible cycle fraction");
    verify->add_option("--tolerance", tolerance, "relative tolerance for constraint checks");
    add_common(verify, common);

    std::string bounds_file;
    std::string objective = "lco2";
    auto* sweep_cmd = app.add_subcommand("sweep", "grid search over design parameters");
    sweep_cmd->add_option("--bounds", bounds_file, "sweep axes (JSON); defaults to the config's sweep section");
    sweep_cmd->add_option("--objective", objective, "lco2 or abatement_per_capex");
    add_common(sweep_cmd, common);

    std::vector<double> values;
    std::vector<double> storage;
    auto* incentives = app.add_subcommand("incentives", "profit and capacity factor across incentive levels");
    incentives->add_option("--values", values, "incentives, USD/t")->delimiter(',');
    incentives->add_option("--storage", storage, "storage sizes to choose from, MWh")->delimiter(',');
    add_common(incentives, common);

    std::vector<double> thresholds{180.0, 220.0, 300.0};
    std::size_t best_n = 10;
    auto* global = app.add_subcommand("global", "stand-alone assessment over a location grid");
    global->add_option("--thresholds", thresholds, "LCO2 thresholds, USD/t")->delimiter(',');
    global->add_option("--best", best_n, "number of best locations to list");
    add_common(global, common);

    std::string global_file;
    std::string reference_file;
    std::string out_dir;
    double diff_tolerance = 1e-6;
    auto* diff = app.add_subcommand("diff", "per-point difference against an external LCO2 grid");
    diff->add_option("--global", global_file, "global.csv")->required();
    diff->add_option("--reference", reference_file, "lat,lon,lco2 CSV")->required();
    diff->add_option("--out", out_dir, "output directory")->required();
    diff->add_option("--tolerance", diff_tolerance, "coordinate match tolerance, degrees");

    std::string summary_dir;
    auto* summarize_cmd = app.add_subcommand("summarize", "threshold shares and lower-bound fit for global.csv");
    summarize_cmd->add_option("--global", global_file, "global.csv")->required();
    summarize_cmd->add_option("--thresholds", thresholds, "LCO2 thresholds, USD/t")->delimiter(',');
    summarize_cmd->add_option("--best", best_n, "number of best locations to list");
    summarize_cmd->add_option("--out", summary_dir, "write summary.json here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << sub->help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "error: " << e.what() << "\n\n" << sub->help();
        return 2;
    }

    try {
        if (*optimize)
            return run_optimize(common, out);
        if (*exact)
            return run_exact(common, horizon, offset, out);
        if (*verify)
            return run_verify(common, schedule_file, min_feasible, tolerance, out);
        if (*sweep_cmd)
            return run_sweep(common, bounds_file, objective, out);
        if (*incentives)
            return run_incentives(common, values, storage, out);
        if (*global)
            return run_global(common, thresholds, best_n, out);
        if (*diff)
            return run_diff(global_file, reference_file, out_dir, diff_tolerance, out);
        if (*summarize_cmd)
            return run_summarize(global_file, thresholds, best_n, summary_dir, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int dispatch(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return dispatch(args, std::cout, std::cerr);
}

} // namespace heliodac::cli

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
#include "heliodac/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::string_view context, std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object())
        throw SchemaError(fmt::format("{} must be a JSON object", context));
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed)
            known = known || key == a;
        if (!known)
            throw SchemaError(fmt::format("unknown key '{}' in {}", key, context));
    }
}

template <class T>
void read(const json& obj, std::string_view context, const char* key, T& out)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return;
    try {
        out = it->template get<T>();
    } catch (const json::exception&) {
        throw SchemaError(fmt::format("{}.{} has the wrong type", context, key));
    }
}

void read_path(const json& obj, std::string_view context, const char* key, const std::filesystem::path& base,
               std::filesystem::path& out)
{
    std::string s;
    read(obj, context, key, s);
    if (s.empty())
        return;
    std::filesystem::path p{s};
    out = p.is_absolute() ? p : base / p;
}

std::vector<double> read_axis(const json& v, std::string_view name)
{
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number())
                throw SchemaError(fmt::format("sweep.{} values must be numbers", name));
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (v.is_number())
        return {v.get<double>()};
    if (v.is_object()) {
        check_keys(v, fmt::format("sweep.{}", name), {"min", "max", "step"});
        if (!v.contains("min") || !v.contains("max") || !v.contains("step"))
            throw SchemaError(fmt::format("sweep.{} needs min, max and step", name));
        try {
            return grid_values(v["min"].get<double>(), v["max"].get<double>(), v["step"].get<double>());
        } catch (const json::exception&) {
            throw SchemaError(fmt::format("sweep.{} bounds must be numbers", name));
        }
    }
    throw SchemaError(fmt::format("sweep.{} must be a number, a list or a {{min, max, step}} object", name));
}

Mode parse_mode(const std::string& s)
{
    if (s == "grid")
        return Mode::grid;
    if (s == "standalone")
        return Mode::standalone;
    throw SchemaError(fmt::format("mode must be 'grid' or 'standalone', got '{}'", s));
}

TimeSeries load_aligned(const std::filesystem::path& path, SeriesKind kind, const ScenarioPaths& sp)
{
    auto s = load_series(path, kind, {.fill_missing = sp.fill_missing});
    s = align_to_step(s, sp.step_seconds);
    check_values(s, path.string());
    return s;
}

void check_alignment(const TimeSeries& ref, const TimeSeries& s, const std::filesystem::path& path)
{
    if (s.start != ref.start || s.size() != ref.size())
        throw SchemaError(fmt::format("{} is not aligned with the solar series ({} steps from {} vs {} from {})",
                                      path.string(), s.size(), format_timestamp(s.start), ref.size(),
                                      format_timestamp(ref.start)));
}

} // namespace

SweepBounds bounds_from_json(const json& j)
{
    check_keys(j, "sweep", {"cp", "cr", "T_target", "h_rated", "pv_kw", "battery_kwh", "budget"});
    SweepBounds b;
    auto axis = [&](const char* key, std::vector<double>& out) {
        if (j.contains(key))
            out = read_axis(j[key], key);
    };
    axis("cp", b.cp);
    axis("cr", b.cr);
    axis("T_target", b.T_target);
    axis("h_rated", b.h_rated);
    axis("pv_kw", b.pv_kw);
    axis("battery_kwh", b.battery_kwh);
    return b;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError(fmt::format("cannot open {}", path.string()));
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
    }
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base)
{
    check_keys(j, "config",
               {"schema_version", "technologies", "technology", "mode", "incentive", "carbon_price", "apply_ambient",
                "battery_efficiency", "scenario", "grid", "design", "sizing", "solar_thermal", "threshold",
                "economics", "sweep", "incentives", "output_dir"});
    int version = 0;
    read(j, "config", "schema_version", version);
    if (version != config_schema_version)
        throw SchemaError(fmt::format("config schema_version must be {}, got {}", config_schema_version, version));

    RunConfig cfg;
    cfg.raw = j;
    auto& s = cfg.settings;
    read_path(j, "config", "technologies", base, cfg.technologies);
    read(j, "config", "technology", cfg.technology);
    std::string mode = "grid";
    read(j, "config", "mode", mode);
    s.mode = parse_mode(mode);
    read(j, "config", "incentive", s.incentive);
    read(j, "config", "carbon_price", s.carbon_price);
    read(j, "config", "apply_ambient", s.apply_ambient);
    read(j, "config", "battery_efficiency", s.battery_efficiency);
    std::string out_dir;
    read(j, "config", "output_dir", out_dir);
    if (!out_dir.empty())
        cfg.output_dir = std::filesystem::path(out_dir).is_absolute() ? std::filesystem::path(out_dir)
                                                                       : base / out_dir;
    else
        cfg.output_dir = base / "out";

    if (j.contains("scenario")) {
        const auto& sc = j["scenario"];
        check_keys(sc, "scenario",
                   {"price", "solar", "carbon_intensity", "fuel_mix", "emission_factors", "ambient", "step_seconds",
                    "fill_missing"});
        auto& p = cfg.scenario;
        read_path(sc, "scenario", "price", base, p.price);
        read_path(sc, "scenario", "solar", base, p.solar);
        read_path(sc, "scenario", "carbon_intensity", base, p.carbon_intensity);
        read_path(sc, "scenario", "fuel_mix", base, p.fuel_mix);
        read_path(sc, "scenario", "emission_factors", base, p.emission_factors);
        read_path(sc, "scenario", "ambient", base, p.ambient);
        read(sc, "scenario", "step_seconds", p.step_seconds);
        read(sc, "scenario", "fill_missing", p.fill_missing);
        if (p.step_seconds <= 0)
            throw SchemaError("scenario.step_seconds must be positive");
        if (!p.carbon_intensity.empty() && !p.fuel_mix.empty())
            throw SchemaError("scenario sets both carbon_intensity and fuel_mix");
        if (p.fuel_mix.empty() != p.emission_factors.empty())
            throw SchemaError("scenario.fuel_mix and scenario.emission_factors go together");
    }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, "grid", {"manifest", "cf_threshold"});
        read_path(g, "grid", "manifest", base, cfg.grid_manifest);
        read(g, "grid", "cf_threshold", cfg.cf_threshold);
    }

    if (j.contains("design")) {
        const auto& d = j["design"];
        check_keys(d, "design", {"cp", "cr", "T_target", "h_rated", "pv_kw", "battery_kwh"});
        read(d, "design", "cp", cfg.design.cp);
        read(d, "design", "cr", cfg.design.cr);
        read(d, "design", "T_target", cfg.design.T_target);
        read(d, "design", "h_rated", cfg.design.h_rated);
        read(d, "design", "pv_kw", cfg.design.pv_kw);
        read(d, "design", "battery_kwh", cfg.design.battery_kwh);
    }

    if (j.contains("sizing")) {
        const auto& z = j["sizing"];
        check_keys(z, "sizing",
                   {"annual_capacity_t", "thermal_mwh_per_t", "sorbent_cost_fraction", "rate_epsilon_fraction"});
        read(z, "sizing", "annual_capacity_t", s.sizing.annual_capacity_t);
        read(z, "sizing", "thermal_mwh_per_t", s.sizing.thermal_mwh_per_t);
        read(z, "sizing", "sorbent_cost_fraction", s.sizing.sorbent_cost_fraction);
        read(z, "sizing", "rate_epsilon_fraction", s.sizing.rate_epsilon_fraction);
    }
    s.sizing.step_seconds = static_cast<double>(cfg.scenario.step_seconds);

    if (j.contains("solar_thermal")) {
        const auto& st = j["solar_thermal"];
        check_keys(st, "solar_thermal",
                   {"alpha", "beta", "m", "gamma", "base_efficiency", "T_unit", "T_min", "per_step_retention",
                    "charge_efficiency", "initial_storage_fraction"});
        auto& c = s.collector;
        read(st, "solar_thermal", "alpha", c.alpha);
        read(st, "solar_thermal", "beta", c.beta);
        read(st, "solar_thermal", "m", c.m);
        read(st, "solar_thermal", "gamma", c.gamma);
        read(st, "solar_thermal", "base_efficiency", c.base_efficiency);
        read(st, "solar_thermal", "T_unit", s.storage.T_unit);
        read(st, "solar_thermal", "T_min", s.storage.T_min);
        read(st, "solar_thermal", "per_step_retention", s.storage.per_step_retention);
        read(st, "solar_thermal", "charge_efficiency", s.storage.charge_efficiency);
        read(st, "solar_thermal", "initial_storage_fraction", s.initial_storage_fraction);
    }
    s.storage.h_rated = cfg.design.h_rated;
    s.collector.cr = cfg.design.cr;
    s.collector.T_target = cfg.design.T_target;
    validate(s.collector);
    validate(s.storage);
    if (!(s.initial_storage_fraction >= 0 && s.initial_storage_fraction <= 1))
        throw SchemaError("solar_thermal.initial_storage_fraction must be in [0, 1]");
    if (!(s.battery_efficiency > 0 && s.battery_efficiency <= 1))
        throw SchemaError("battery_efficiency must be in (0, 1]");

    if (j.contains("threshold")) {
        const auto& t = j["threshold"];
        check_keys(t, "threshold",
                   {"chunk_steps", "lookahead_steps", "guess_min", "guess_max", "guess_spacing", "tolerance",
                    "max_plan_steps"});
        auto& c = s.threshold;
        read(t, "threshold", "chunk_steps", c.chunk_steps);
        read(t, "threshold", "lookahead_steps", c.lookahead_steps);
        read(t, "threshold", "guess_min", c.guess_min);
        read(t, "threshold", "guess_max", c.guess_max);
        read(t, "threshold", "guess_spacing", c.guess_spacing);
        read(t, "threshold", "tolerance", c.tolerance);
        read(t, "threshold", "max_plan_steps", c.max_plan_steps);
    }
    validate(s.threshold);

    if (j.contains("economics")) {
        const auto& e = j["economics"];
        check_keys(e, "economics",
                   {"unit_capex_cst", "unit_capex_storage", "unit_capex_dac", "unit_capex_pv", "unit_capex_battery",
                    "sorbent_om_per_cycle", "discount_rate", "lifetime_years", "scaling_discount", "dac_module_t"});
        auto& m = s.costs;
        read(e, "economics", "unit_capex_cst", m.unit_capex_cst);
        read(e, "economics", "unit_capex_storage", m.unit_capex_storage);
        read(e, "economics", "unit_capex_dac", m.unit_capex_dac);
        read(e, "economics", "unit_capex_pv", m.unit_capex_pv);
        read(e, "economics", "unit_capex_battery", m.unit_capex_battery);
        if (e.contains("sorbent_om_per_cycle") && !e["sorbent_om_per_cycle"].is_null()) {
            double v = 0.0;
            read(e, "economics", "sorbent_om_per_cycle", v);
            m.sorbent_om_per_cycle = v;
        }
        read(e, "economics", "discount_rate", m.discount_rate);
        read(e, "economics", "lifetime_years", m.lifetime_years);
        read(e, "economics", "scaling_discount", m.scaling_discount);
        read(e, "economics", "dac_module_t", m.dac_module_t);
    }
    validate(s.costs);

    if (j.contains("sweep")) {
        cfg.bounds = bounds_from_json(j["sweep"]);
        read(j["sweep"], "sweep", "budget", cfg.sweep_budget);
    }
    if (j.contains("incentives")) {
        const auto& inc = j["incentives"];
        check_keys(inc, "incentives", {"values", "storage_options"});
        read(inc, "incentives", "values", cfg.incentives);
        read(inc, "incentives", "storage_options", cfg.storage_options);
    }

    if (cfg.technologies.empty())
        throw SchemaError("config.technologies must name the technology parameter file");
    const auto all = load_technologies(cfg.technologies);
    s.technology = find_technology(all, cfg.technology);
    if (s.mode == Mode::grid && (cfg.design.pv_kw > 0 || cfg.design.battery_kwh > 0))
        throw SchemaError("design.pv_kw and design.battery_kwh only apply in standalone mode");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path))
        throw ValidationError(fmt::format("config file not found: {}", path.string()));
    return config_from_json(read_json_file(path), path.parent_path());
}

SiteData load_site(const RunConfig& cfg)
{
    const auto& sp = cfg.scenario;
    if (sp.solar.empty())
        throw SchemaError("scenario.solar is required");
    const auto solar = load_aligned(sp.solar, SeriesKind::solar, sp);

    SiteData site;
    site.start = solar.start;
    site.step_seconds = sp.step_seconds;
    site.dni_cf = solar.values;

    if (!sp.price.empty()) {
        const auto price = load_aligned(sp.price, SeriesKind::price, sp);
        check_alignment(solar, price, sp.price);
        site.prices = price.values;
    } else if (cfg.settings.mode == Mode::grid) {
        throw SchemaError("grid mode needs scenario.price");
    }

    if (!sp.carbon_intensity.empty()) {
        const auto ci = load_aligned(sp.carbon_intensity, SeriesKind::carbon_intensity, sp);
        check_alignment(solar, ci, sp.carbon_intensity);
        site.carbon_intensity = ci.values;
    } else if (!sp.fuel_mix.empty()) {
        auto ci = align_to_step(carbon_intensity(load_fuel_mix(sp.fuel_mix, sp.emission_factors)), sp.step_seconds);
        check_alignment(solar, ci, sp.fuel_mix);
        site.carbon_intensity = std::move(ci.values);
    }

    if (!sp.ambient.empty()) {
        const auto amb = load_ambient(sp.ambient, {.fill_missing = sp.fill_missing});
        const auto T = align_to_step(amb.temperature, sp.step_seconds);
        const auto RH = align_to_step(amb.humidity, sp.step_seconds);
        check_values(T, sp.ambient.string());
        check_values(RH, sp.ambient.string());
        check_alignment(solar, T, sp.ambient);
        site.temperature = T.values;
        site.humidity = RH.values;
    } else if (cfg.settings.apply_ambient) {
        throw SchemaError("apply_ambient needs scenario.ambient");
    }
    validate(site);
    return site;
}

std::vector<ManifestEntry> input_files(const RunConfig& cfg)
{
    std::vector<ManifestEntry> out;
    auto add = [&](const char* role, const std::filesystem::path& p) {
        if (!p.empty())
            out.push_back({role, p});
    };
    add("technologies", cfg.technologies);
    add("price", cfg.scenario.price);
    add("solar", cfg.scenario.solar);
    add("carbon_intensity", cfg.scenario.carbon_intensity);
    add("fuel_mix", cfg.scenario.fuel_mix);
    add("emission_factors", cfg.scenario.emission_factors);
    add("ambient", cfg.scenario.ambient);
    add("grid_manifest", cfg.grid_manifest);
    return out;
}

} // namespace heliodac

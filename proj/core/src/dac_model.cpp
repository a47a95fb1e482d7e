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
#include "heliodac/dac_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "heliodac/error.hpp"

namespace heliodac {

namespace {

constexpr double hours_per_year = 8760.0;

double raw_energy_solid(double T, double RH)
{
    const double r = RH - 0.4;
    return (1.9 + 0.01 * (T - 20.0)) * r * r * std::exp(r) + (1.5 + 0.003 * (T - 20.0) * (T - 20.0));
}

double raw_capture_solid(double T, double RH)
{
    const double r = RH - 0.4;
    return 65.0 - 0.01 * T * T - (T + 20.0) * r * r;
}

double raw_capture_koh(double T, double RH) { return 74.0 + 8.0 * (RH - 0.5) + (T - 20.0); }

const double energy_baseline = raw_energy_solid(20.0, 0.5);
const double capture_baseline = raw_capture_solid(20.0, 0.5);
const double koh_baseline = raw_capture_koh(20.0, 0.5);

double number(const nlohmann::json& j, const char* key, const std::string& where)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw SchemaError(fmt::format("{}: missing numeric field '{}'", where, key));
    return j.at(key).get<double>();
}

} // namespace

std::string_view phase_name(Phase p)
{
    switch (p) {
    case Phase::idle:
        return "idle";
    case Phase::adsorb:
        return "adsorb";
    case Phase::desorb:
        return "desorb";
    }
    return "idle";
}

Phase parse_phase(std::string_view name)
{
    if (name == "idle")
        return Phase::idle;
    if (name == "adsorb")
        return Phase::adsorb;
    if (name == "desorb")
        return Phase::desorb;
    throw SchemaError(fmt::format("unknown phase '{}'", name));
}

void validate(const TechnologySpec& spec)
{
    if (spec.name.empty())
        throw SchemaError("technology needs a name");
    if (!(spec.S >= 0 && spec.P_a >= 0 && spec.P_d >= 0))
        throw SchemaError(fmt::format("technology {}: S, P_a and P_d must be >= 0", spec.name));
    if (!(spec.cycle_hours > 0))
        throw SchemaError(fmt::format("technology {}: cycle_hours must be positive", spec.name));
    if (spec.beta_a1 < 0 || spec.beta_a1 + spec.beta_a2 < 0 || spec.beta_d1 < 0 || spec.beta_d1 + spec.beta_d2 < 0)
        throw SchemaError(fmt::format("technology {}: rate caps must be non-negative over [0, X_max]", spec.name));
}

void validate(const Technology& tech)
{
    if (!(tech.X_max > 0))
        throw SchemaError(fmt::format("technology {}: X_max must be positive", tech.name));
    if (!(tech.S >= 0 && tech.P_a >= 0 && tech.P_d >= 0 && tech.H >= 0 && tech.rate_epsilon >= 0))
        throw SchemaError(fmt::format("technology {}: S, P_a, P_d, H and rate_epsilon must be >= 0", tech.name));
    if (tech.beta_a1 < 0 || tech.beta_a1 + tech.beta_a2 < 0 || tech.beta_d1 < 0 || tech.beta_d1 + tech.beta_d2 < 0)
        throw SchemaError(fmt::format("technology {}: rate caps must be non-negative over [0, X_max]", tech.name));
}

std::vector<TechnologySpec> load_technologies(const std::filesystem::path& path)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
    }
    if (!doc.contains("technologies") || !doc.at("technologies").is_array())
        throw SchemaError(fmt::format("{}: expected a 'technologies' array", path.string()));

    std::vector<TechnologySpec> out;
    for (const auto& t : doc.at("technologies")) {
        TechnologySpec spec;
        spec.name = t.value("name", "");
        const auto where = fmt::format("{} [{}]", path.string(), spec.name);
        spec.S = number(t, "S", where);
        spec.P_a = number(t, "P_a", where);
        spec.P_d = number(t, "P_d", where);
        spec.beta_a1 = number(t, "beta_a1", where);
        spec.beta_a2 = number(t, "beta_a2", where);
        spec.beta_d1 = number(t, "beta_d1", where);
        spec.beta_d2 = number(t, "beta_d2", where);
        spec.cycle_hours = number(t, "cycle_hours", where);
        const auto model = t.value("capture_model", "solid");
        if (model == "solid")
            spec.capture_model = CaptureModel::solid;
        else if (model == "koh")
            spec.capture_model = CaptureModel::koh;
        else
            throw SchemaError(fmt::format("{}: capture_model must be 'solid' or 'koh'", where));
        validate(spec);
        out.push_back(std::move(spec));
    }
    return out;
}

const TechnologySpec& find_technology(const std::vector<TechnologySpec>& all, std::string_view name)
{
    for (const auto& t : all)
        if (t.name == name)
            return t;
    std::string known;
    for (const auto& t : all)
        known += (known.empty() ? "" : ", ") + t.name;
    throw ValidationError(fmt::format("unknown technology '{}' (known: {})", name, known));
}

double capacity_per_cycle(double annual_capacity, double cycle_hours)
{
    if (!(annual_capacity > 0) || !(cycle_hours > 0))
        throw ArgumentError(fmt::format("capacity_per_cycle needs positive inputs, got {} t/yr and {} h",
                                        annual_capacity, cycle_hours));
    return annual_capacity / (hours_per_year / cycle_hours);
}

int nominal_desorb_steps(const Technology& tech)
{
    double X = tech.X_max;
    int steps = 0;
    while (steps < 100000) {
        const double d = std::min(desorption_cap(X, tech), X);
        if (d <= tech.rate_epsilon)
            break;
        X -= d;
        ++steps;
    }
    return std::max(steps, 1);
}

Technology make_technology(const TechnologySpec& spec, const PlantSizing& sizing)
{
    validate(spec);
    if (!(sizing.step_seconds > 0) || !(sizing.thermal_mwh_per_t >= 0) || !(sizing.sorbent_cost_fraction >= 0) ||
        !(sizing.rate_epsilon_fraction >= 0))
        throw SchemaError("plant sizing values must be non-negative with a positive step");

    Technology tech;
    tech.name = spec.name;
    tech.beta_a1 = spec.beta_a1;
    tech.beta_a2 = spec.beta_a2;
    tech.beta_d1 = spec.beta_d1;
    tech.beta_d2 = spec.beta_d2;
    tech.cycle_hours = spec.cycle_hours;
    tech.capture_model = spec.capture_model;
    tech.X_max = capacity_per_cycle(sizing.annual_capacity_t, spec.cycle_hours);

    const double step_hours = sizing.step_seconds / 3600.0;
    tech.P_a = spec.P_a * tech.X_max * step_hours;
    tech.P_d = spec.P_d * tech.X_max * step_hours;
    tech.S = spec.S * tech.X_max * sizing.sorbent_cost_fraction;
    tech.rate_epsilon = sizing.rate_epsilon_fraction * spec.beta_a1 * tech.X_max;
    tech.H = sizing.thermal_mwh_per_t * tech.X_max / nominal_desorb_steps(tech);
    validate(tech);
    return tech;
}

StateStep step_state(const DacState& state, Phase phase, const Rates& rates, const Technology& tech)
{
    if (rates.a < 0 || rates.d < 0)
        throw InfeasibleError("rates must be non-negative");
    if ((phase != Phase::adsorb && rates.a > 0) || (phase != Phase::desorb && rates.d > 0))
        throw InfeasibleError(fmt::format("rates inconsistent with phase {}", phase_name(phase)));
    const double X = state.X + rates.a - rates.d;
    const double tol = 1e-12 * tech.X_max;
    if (X < -tol || X > tech.X_max + tol)
        throw InfeasibleError(fmt::format("saturation {} outside [0, {}]", X, tech.X_max));

    StateStep out;
    out.state.X = std::clamp(X, 0.0, tech.X_max);
    out.state.phase = phase;
    out.state.k = next_cycle_flag(state.k, phase);
    out.z = (out.state.k == 1 && state.k == 0) ? 1 : 0;
    return out;
}

AmbientFactors ambient_factors_solid(double T, double RH)
{
    AmbientFactors f;
    f.energy_factor = raw_energy_solid(T, RH) / energy_baseline;
    f.capture_factor = std::max(0.0, raw_capture_solid(T, RH) / capture_baseline);
    return f;
}

double ambient_capture_koh(double T, double RH) { return std::max(0.0, raw_capture_koh(T, RH) / koh_baseline); }

AmbientFactors ambient_factors(CaptureModel model, double T, double RH)
{
    if (model == CaptureModel::koh)
        return {1.0, ambient_capture_koh(T, RH)};
    return ambient_factors_solid(T, RH);
}

} // namespace heliodac

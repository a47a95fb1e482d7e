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
#include <string_view>
#include <vector>

namespace heliodac {

enum class Phase : std::uint8_t { idle = 0, adsorb = 1, desorb = 2 };

std::string_view phase_name(Phase p);
Phase parse_phase(std::string_view name);

enum class CaptureModel { solid, koh };

// One column of the published technology table, exactly as shipped.
struct TechnologySpec {
    std::string name;
    double S = 0.0;   // USD per cycle switch, per t of per-cycle capacity
    double P_a = 0.0; // MW per t of per-cycle capacity while adsorbing
    double P_d = 0.0; // MW per t of per-cycle capacity while desorbing
    double beta_a1 = 0.0;
    double beta_a2 = 0.0;
    double beta_d1 = 0.0;
    double beta_d2 = 0.0;
    double cycle_hours = 1.0;
    CaptureModel capture_model = CaptureModel::solid;
};

// Plant-level sizing used to turn table values into per-step quantities.
struct PlantSizing {
    double annual_capacity_t = 6000.0;
    double step_seconds = 300.0;
    double thermal_mwh_per_t = 4.4;
    double sorbent_cost_fraction = 0.12;
    double rate_epsilon_fraction = 0.01;
};

// Per-step operating model of one DAC plant.
struct Technology {
    std::string name;
    double S = 0.0;   // USD per cycle switch
    double P_a = 0.0; // MWh electricity per adsorption step
    double P_d = 0.0; // MWh electricity per desorption step
    double beta_a1 = 0.0;
    double beta_a2 = 0.0;
    double beta_d1 = 0.0;
    double beta_d2 = 0.0;
    double cycle_hours = 1.0;
    double X_max = 1.0;        // t per cycle
    double H = 0.0;            // MWh thermal per desorption step
    double rate_epsilon = 0.0; // t per step below which a phase counts as saturated
    CaptureModel capture_model = CaptureModel::solid;
};

void validate(const TechnologySpec& spec);
void validate(const Technology& tech);

std::vector<TechnologySpec> load_technologies(const std::filesystem::path& path);
const TechnologySpec& find_technology(const std::vector<TechnologySpec>& all, std::string_view name);

double capacity_per_cycle(double annual_capacity, double cycle_hours);

// Rate-saturated desorption steps needed to bring a full load below rate_epsilon.
int nominal_desorb_steps(const Technology& tech);

Technology make_technology(const TechnologySpec& spec, const PlantSizing& sizing);

inline double adsorption_cap(double X, const Technology& tech, double capture_factor)
{
    const double cap = capture_factor * (tech.beta_a1 + tech.beta_a2 * (X / tech.X_max)) * tech.X_max;
    return cap > 0.0 ? cap : 0.0;
}

inline double desorption_cap(double X, const Technology& tech)
{
    const double cap = (tech.beta_d1 + tech.beta_d2 * (X / tech.X_max)) * tech.X_max;
    return cap > 0.0 ? cap : 0.0;
}

struct DacState {
    double X = 0.0;
    Phase phase = Phase::idle;
    int k = 0;
};

struct Rates {
    double a = 0.0;
    double d = 0.0;
};

// u - v = 1 sets k, u - v = -1 clears it, idle keeps it.
inline int next_cycle_flag(int k, Phase phase)
{
    switch (phase) {
    case Phase::adsorb:
        return 1;
    case Phase::desorb:
        return 0;
    case Phase::idle:
        break;
    }
    return k;
}

struct StateStep {
    DacState state;
    int z = 0; // 1 on a rising edge of k
};

StateStep step_state(const DacState& state, Phase phase, const Rates& rates, const Technology& tech);

struct AmbientFactors {
    double energy_factor = 1.0;
    double capture_factor = 1.0;
};

AmbientFactors ambient_factors_solid(double T, double RH);
double ambient_capture_koh(double T, double RH);
AmbientFactors ambient_factors(CaptureModel model, double T, double RH);

} // namespace heliodac

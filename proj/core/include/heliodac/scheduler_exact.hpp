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

#include <filesystem>
#include <string>
#include <vector>

#include "heliodac/plant.hpp"

namespace heliodac {

inline constexpr std::size_t max_exact_horizon = 16;

// Exhaustive search over idle/adsorb/desorb sequences on the whole slice.
// Among equally profitable schedules the first in idle < adsorb < desorb
// lexicographic order is returned.
Schedule solve_exact(const ScenarioSlice& slice, const Technology& tech, const ThermalStore& store,
                     const PlantState& initial = {});

struct Violation {
    std::size_t step = 0;
    std::string constraint;
    std::string detail;
};

std::vector<Violation> verify_schedule(const Schedule& schedule, const ScenarioSlice& slice, const Technology& tech,
                                       const ThermalStore& store, double tolerance = 1e-9);

void write_schedule_csv(const std::filesystem::path& path, const Schedule& schedule);

// k is rebuilt from the phase sequence starting at initial_k.
Schedule read_schedule_csv(const std::filesystem::path& path, int initial_k = 0);

} // namespace heliodac

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

#include <vector>

#include "heliodac/plant.hpp"

namespace heliodac {

struct ThresholdConfig {
    std::size_t chunk_steps = 288;
    std::size_t lookahead_steps = 288;
    double guess_min = -10.0;
    double guess_max = 500.0;
    double guess_spacing = 10.0;
    double tolerance = 0.01;
    // Longest cycle plan (in steps, waits included) the phase automaton considers.
    std::size_t max_plan_steps = 288;
};

void validate(const ThresholdConfig& cfg);

inline bool is_active(double price, double threshold) { return price <= threshold; }

struct ChunkResult {
    double lambda_opt = 0.0;
    double profit = 0.0;
    double co2_desorbed = 0.0;
    double X_remain = 0.0;
    double boost = 0.0;
    PlantState end_state;
    std::size_t offset = 0;
    std::size_t steps = 0;
};

double boost(double profit_chunk, double co2_chunk, double X_remain);

// Runs the threshold policy over the whole slice. Only the first commit_steps
// (all when 0) count towards the result; their records are appended to log.
ChunkResult simulate_policy(const ScenarioSlice& slice, const Technology& tech, const ThermalStore& store,
                            double threshold, const PlantState& start, std::size_t commit_steps = 0,
                            std::vector<StepRecord>* log = nullptr);

// Searches the threshold on the window and commits its first commit_steps
// (cfg.chunk_steps when 0).
ChunkResult optimize_chunk(const ScenarioSlice& window, const Technology& tech, const ThermalStore& store,
                           const ThresholdConfig& cfg, const PlantState& start, std::size_t commit_steps = 0,
                           std::vector<StepRecord>* log = nullptr);

struct YearResult {
    Schedule schedule;
    std::vector<ChunkResult> chunks;
};

YearResult run_year(const ScenarioSlice& scenario, const Technology& tech, const ThermalStore& store,
                    const ThresholdConfig& cfg, const PlantState& initial = {});

} // namespace heliodac

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

#include <span>
#include <vector>

namespace heliodac {

struct CollectorParams {
    double alpha = 8.8e-7; // 1/degC^2
    double beta = 1.1;
    double m = 0.1;
    double gamma = 1.0;
    double base_efficiency = 0.78;
    double cr = 1.0;
    double T_target = 400.0; // degC
};

struct StorageParams {
    double h_rated = 70.0; // MWh per T_unit of span
    double T_unit = 100.0;
    double T_min = 300.0;
    double per_step_retention = 0.99986;
    double charge_efficiency = 0.95;
};

void validate(const CollectorParams& p);
void validate(const StorageParams& s);

double collector_efficiency(double dni_cf, const CollectorParams& p);

// MWh delivered into storage per step from a field of cp MWh/step nameplate.
double thermal_flux(double dni_cf, double cp, const CollectorParams& p, double charge_efficiency = 1.0);

std::vector<double> flux_series(std::span<const double> dni_cf, double cp, const CollectorParams& p,
                                double charge_efficiency);

double effective_capacity(const StorageParams& s, double T_target);

} // namespace heliodac

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
#include "heliodac/solar_thermal.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

void validate(const CollectorParams& p)
{
    if (!(p.alpha > 0 && p.beta > 0 && p.m > 0 && p.gamma > 0 && p.base_efficiency > 0))
        throw DesignError("collector constants must be positive");
    if (!(p.cr >= 1.0))
        throw DesignError(fmt::format("concentration ratio must be >= 1, got {}", p.cr));
    if (!(p.T_target >= 100.0))
        throw DesignError(fmt::format("target temperature {} degC is below regeneration temperature", p.T_target));
}

void validate(const StorageParams& s)
{
    if (!(s.h_rated >= 0.0) || !(s.T_unit > 0.0))
        throw DesignError("storage rating must be >= 0 with a positive temperature unit");
    if (!(s.per_step_retention > 0.0 && s.per_step_retention <= 1.0))
        throw DesignError("storage retention must be in (0, 1]");
    if (!(s.charge_efficiency > 0.0 && s.charge_efficiency <= 1.0))
        throw DesignError("storage charge efficiency must be in (0, 1]");
    if (!(s.T_min >= 300.0))
        throw DesignError(fmt::format("storage minimum temperature {} degC is below 300 degC", s.T_min));
}

double collector_efficiency(double dni_cf, const CollectorParams& p)
{
    const double loss = p.alpha * p.T_target * p.T_target * (p.beta / (dni_cf + p.m)) * (p.gamma / p.cr);
    return std::max(0.0, p.base_efficiency - loss);
}

double thermal_flux(double dni_cf, double cp, const CollectorParams& p, double charge_efficiency)
{
    if (dni_cf <= 0.0)
        return 0.0;
    return dni_cf * cp * collector_efficiency(dni_cf, p) * charge_efficiency;
}

std::vector<double> flux_series(std::span<const double> dni_cf, double cp, const CollectorParams& p,
                                double charge_efficiency)
{
    if (!(cp > 0.0))
        throw DesignError(fmt::format("collector capacity must be positive, got {}", cp));
    std::vector<double> out(dni_cf.size());
    std::transform(dni_cf.begin(), dni_cf.end(), out.begin(),
                   [&](double d) { return thermal_flux(d, cp, p, charge_efficiency); });
    return out;
}

double effective_capacity(const StorageParams& s, double T_target)
{
    if (T_target < s.T_min)
        throw DesignError(
            fmt::format("target temperature {} degC is below storage minimum {} degC", T_target, s.T_min));
    return s.h_rated * (T_target - s.T_min) / s.T_unit;
}

} // namespace heliodac

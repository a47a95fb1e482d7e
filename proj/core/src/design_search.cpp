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
#include "heliodac/design_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "heliodac/error.hpp"
#include "heliodac/parallel.hpp"

namespace heliodac {

Objective parse_objective(std::string_view name)
{
    if (name == "lco2")
        return Objective::lco2;
    if (name == "abatement_per_capex")
        return Objective::abatement_per_capex;
    throw ArgumentError(fmt::format("unknown objective '{}', expected lco2 or abatement_per_capex", name));
}

std::string_view objective_name(Objective o)
{
    return o == Objective::lco2 ? "lco2" : "abatement_per_capex";
}

std::vector<double> grid_values(double min, double max, double step)
{
    if (!(step > 0) || !(max >= min) || !std::isfinite(min) || !std::isfinite(max))
        throw ArgumentError(fmt::format("bad range [{}, {}] step {}", min, max, step));
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        out.push_back(min + static_cast<double>(i) * step);
    return out;
}

std::vector<DesignParams> expand_grid(const SweepBounds& bounds, const DesignParams& base)
{
    auto axis = [](const std::vector<double>& v, double fallback) {
        return v.empty() ? std::vector<double>{fallback} : v;
    };
    const auto cp = axis(bounds.cp, base.cp);
    const auto cr = axis(bounds.cr, base.cr);
    const auto T = axis(bounds.T_target, base.T_target);
    const auto h = axis(bounds.h_rated, base.h_rated);
    const auto pv = axis(bounds.pv_kw, base.pv_kw);
    const auto bat = axis(bounds.battery_kwh, base.battery_kwh);

    std::vector<DesignParams> out;
    for (double a : cp)
        for (double b : cr)
            for (double c : T)
                for (double d : h)
                    for (double e : pv)
                        for (double f : bat)
                            out.push_back({a, b, c, d, e, f});
    return out;
}

double objective_score(const SweepPoint& p, Objective o)
{
    if (!p.error.empty())
        return std::numeric_limits<double>::infinity();
    if (o == Objective::lco2)
        return std::isfinite(p.lco2) ? p.lco2 : std::numeric_limits<double>::infinity();
    return -p.abatement_per_capex;
}

bool better_point(const SweepPoint& a, const SweepPoint& b, Objective o)
{
    const double sa = objective_score(a, o);
    const double sb = objective_score(b, o);
    if (sa != sb)
        return sa < sb;
    if (a.total_capex != b.total_capex)
        return a.total_capex < b.total_capex;
    const auto key = [](const DesignParams& d) {
        return std::tie(d.cp, d.cr, d.T_target, d.h_rated, d.pv_kw, d.battery_kwh);
    };
    return key(a.design) < key(b.design);
}

std::size_t select_argmin(const std::vector<SweepPoint>& points, Objective o)
{
    if (points.empty())
        throw ArgumentError("sweep grid is empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (better_point(points[i], points[best], o))
            best = i;
    return best;
}

SweepResult sweep(const SiteData& site, const ModelSettings& settings, const SweepBounds& bounds,
                  const DesignParams& base, Objective objective, std::size_t jobs, std::size_t budget)
{
    const auto designs = expand_grid(bounds, base);
    if (designs.empty())
        throw ArgumentError("sweep grid is empty");
    if (designs.size() > budget)
        throw ArgumentError(
            fmt::format("sweep grid has {} points, over the budget of {}", designs.size(), budget));
    for (const auto& d : designs)
        validate(d, settings.mode);

    SweepResult out;
    out.objective = objective;
    out.points = ordered_map<SweepPoint>(designs.size(), jobs, [&](std::size_t i) {
        SweepPoint p;
        p.design = designs[i];
        const Evaluation ev = evaluate(site, designs[i], settings, settings.apply_ambient);
        p.net_co2 = ev.net_co2;
        p.capacity_factor = ev.totals.capacity_factor();
        p.abatement_per_capex = ev.abatement_per_capex;
        p.total_capex = ev.total_capex;
        p.lco2 = ev.cost ? ev.cost->lco2 : std::numeric_limits<double>::quiet_NaN();
        p.profit = ev.cost ? ev.cost->annual_profit : 0.0;
        p.error = ev.cost_error;
        return p;
    });
    out.argmin = select_argmin(out.points, objective);
    if (!std::isfinite(objective_score(out.points[out.argmin], objective)))
        throw DesignError("no grid point has a defined objective");
    return out;
}

std::vector<IncentivePoint> incentive_sweep(const SiteData& site, const ModelSettings& settings,
                                            const DesignParams& design, const std::vector<double>& incentives,
                                            const std::vector<double>& storage_options, std::size_t jobs)
{
    for (double pi : incentives)
        if (!(pi >= 0))
            throw ArgumentError(fmt::format("incentive values must be >= 0, got {}", pi));
    std::vector<double> storage = storage_options.empty() ? std::vector<double>{design.h_rated} : storage_options;
    if (std::find(storage.begin(), storage.end(), design.h_rated) == storage.end())
        storage.push_back(design.h_rated);

    const std::size_t ns = storage.size();
    struct Run {
        double profit = 0.0;
        double cf = 0.0;
        double captured = 0.0;
        double capex = 0.0;
    };
    const auto runs = ordered_map<Run>(incentives.size() * ns, jobs, [&](std::size_t idx) {
        ModelSettings s = settings;
        s.incentive = incentives[idx / ns];
        DesignParams d = design;
        d.h_rated = storage[idx % ns];
        const Evaluation ev = evaluate(site, d, s, s.apply_ambient);
        const double years =
            static_cast<double>(ev.totals.steps) * static_cast<double>(site.step_seconds) / (8760.0 * 3600.0);
        return Run{ev.totals.profit / years, ev.totals.capacity_factor(), ev.totals.desorbed_t / years,
                   ev.total_capex};
    });

    std::vector<IncentivePoint> out;
    for (std::size_t i = 0; i < incentives.size(); ++i) {
        IncentivePoint p;
        p.incentive = incentives[i];
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ns; ++j) {
            const Run& r = runs[i * ns + j];
            const double storage_cost =
                annualize(settings.costs.unit_capex_storage * storage[j] * 1000.0, settings.costs.discount_rate,
                          settings.costs.lifetime_years);
            const double net = r.profit - storage_cost;
            if (net > best) {
                best = net;
                p.optimal_h_rated = storage[j];
            }
            if (storage[j] == design.h_rated) {
                p.profit = r.profit;
                p.capacity_factor = r.cf;
                p.captured_t = r.captured;
                p.payback_years = payback_years(r.capex, r.profit);
            }
        }
        out.push_back(p);
    }
    return out;
}

std::vector<std::size_t> monotonicity_breaks(const std::vector<IncentivePoint>& points, double tolerance)
{
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a].incentive < points[b].incentive; });
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const auto& prev = points[order[i - 1]];
        const auto& cur = points[order[i]];
        const double scale = std::max(1.0, std::abs(prev.profit));
        if (cur.profit < prev.profit - tolerance * scale || cur.capacity_factor < prev.capacity_factor - tolerance)
            out.push_back(order[i]);
    }
    return out;
}

} // namespace heliodac

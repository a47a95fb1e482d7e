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
#include "heliodac/scheduler_exact.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "csv.hpp"
#include "heliodac/error.hpp"

namespace heliodac {

namespace {

class ExactSearch {
public:
    ExactSearch(const ScenarioSlice& sc, const Technology& tech, const ThermalStore& store)
        : sc_(sc), tech_(tech), store_(store), n_(sc.size()), path_(n_), best_path_(n_), bound_(n_ + 1, 0.0)
    {
        // Optimistic value of the remaining steps: every step adsorbs at the
        // largest possible rate and negative prices pay for energy use.
        const double a_max = tech.X_max * std::max(tech.beta_a1, tech.beta_a1 + tech.beta_a2);
        const double p_max = std::max(tech.P_a, tech.P_d);
        for (std::size_t t = n_; t-- > 0;) {
            const double paid = std::max(0.0, -sc.price(t) * sc.energy_scale(t) * p_max);
            bound_[t] = bound_[t + 1] + sc.incentive * a_max * std::max(1.0, sc.capture_scale(t)) + paid;
        }
    }

    void run(const PlantState& initial)
    {
        initial_ = initial;
        best_ = -std::numeric_limits<double>::infinity();
        dfs(0, initial, 0.0);
    }

    double best_profit() const { return best_; }
    const std::vector<StepRecord>& best_path() const { return best_path_; }

private:
    void dfs(std::size_t t, const PlantState& s, double profit)
    {
        if (t == n_) {
            if (profit > best_) {
                best_ = profit;
                best_path_ = path_;
            }
            return;
        }
        if (profit + sc_.incentive * s.X + bound_[t] <= best_)
            return;
        static constexpr std::array<Phase, 3> order{Phase::idle, Phase::adsorb, Phase::desorb};
        for (Phase ph : order) {
            StepRecord& r = path_[t];
            if (!advance(sc_, tech_, store_, s, t, ph, r))
                continue;
            dfs(t + 1, state_after(r), profit + r.profit());
        }
    }

    const ScenarioSlice& sc_;
    const Technology& tech_;
    const ThermalStore& store_;
    std::size_t n_;
    std::vector<StepRecord> path_;
    std::vector<StepRecord> best_path_;
    std::vector<double> bound_;
    PlantState initial_;
    double best_ = 0.0;
};

} // namespace

Schedule solve_exact(const ScenarioSlice& slice, const Technology& tech, const ThermalStore& store,
                     const PlantState& initial)
{
    if (slice.size() == 0)
        throw ArgumentError("exact solver needs a non-empty horizon");
    if (slice.size() > max_exact_horizon)
        throw ArgumentError(fmt::format("horizon {} exceeds the exhaustive-search limit of {} steps", slice.size(),
                                        max_exact_horizon));
    validate(slice);
    validate(tech);
    validate(initial, tech, store, slice);

    ExactSearch search(slice, tech, store);
    search.run(initial);

    Schedule out;
    out.initial = initial;
    out.steps = search.best_path();
    out.totals = tally(out.steps, tech);
    return out;
}

std::vector<Violation> verify_schedule(const Schedule& schedule, const ScenarioSlice& slice, const Technology& tech,
                                       const ThermalStore& store, double tolerance)
{
    std::vector<Violation> out;
    auto flag = [&](std::size_t t, const char* name, std::string detail) {
        out.push_back({t, name, std::move(detail)});
    };
    if (schedule.steps.size() > slice.size()) {
        flag(0, "horizon", fmt::format("schedule has {} steps, scenario {}", schedule.steps.size(), slice.size()));
        return out;
    }

    const double xtol = tolerance * std::max(1.0, tech.X_max);
    const double htol = tolerance * std::max(1.0, store.capacity + tech.H);
    PlantState prev = schedule.initial;
    for (std::size_t t = 0; t < schedule.steps.size(); ++t) {
        const auto& r = schedule.steps[t];
        const bool u = r.phase == Phase::adsorb;
        const bool v = r.phase == Phase::desorb;

        if ((r.a > xtol && r.d > xtol) || (!u && r.a > xtol) || (!v && r.d > xtol))
            flag(t, "mutual_exclusion", fmt::format("phase {} with a={} d={}", phase_name(r.phase), r.a, r.d));
        if (r.a < -xtol || r.a > adsorption_cap(prev.X, tech, slice.capture_scale(t)) + xtol)
            flag(t, "adsorption_rate", fmt::format("a={} outside [0, cap]", r.a));
        if (r.d < -xtol || r.d > desorption_cap(prev.X, tech) + xtol)
            flag(t, "desorption_rate", fmt::format("d={} outside [0, cap]", r.d));
        if (std::abs(r.X - (prev.X + r.a - r.d)) > xtol)
            flag(t, "state_balance", fmt::format("X={} but X_prev+a-d={}", r.X, prev.X + r.a - r.d));
        if (r.X < -xtol || r.X > tech.X_max + xtol)
            flag(t, "state_bounds", fmt::format("X={} outside [0, {}]", r.X, tech.X_max));

        const int k = next_cycle_flag(prev.k, r.phase);
        if (r.k != k)
            flag(t, "cycle_flag", fmt::format("k={} but phase sequence implies {}", r.k, k));
        if (r.z > 1 || static_cast<int>(r.z) < k - prev.k || r.z > k)
            flag(t, "cycle_switch", fmt::format("z={} with k {} -> {}", r.z, prev.k, k));

        const double available = store.retention * prev.h + slice.flux[t];
        if (v && available + htol < tech.H)
            flag(t, "thermal_feasibility", fmt::format("desorbing needs {} MWh, {} available", tech.H, available));
        const double expected_h = std::clamp(available - (v ? tech.H : 0.0), 0.0, store.capacity);
        if (std::abs(r.h - expected_h) > htol)
            flag(t, "thermal_balance", fmt::format("h={} but storage balance gives {}", r.h, expected_h));
        if (r.h < -htol || r.h > store.capacity + htol)
            flag(t, "storage_bounds", fmt::format("h={} outside [0, {}]", r.h, store.capacity));

        prev = {r.X, r.h, r.battery, r.k};
    }
    return out;
}

void write_schedule_csv(const std::filesystem::path& path, const Schedule& schedule)
{
    std::string text = "step,phase,a,d,X,h,z\n";
    text.reserve(64 * (schedule.steps.size() + 1));
    for (std::size_t t = 0; t < schedule.steps.size(); ++t) {
        const auto& r = schedule.steps[t];
        text += fmt::format("{},{},{},{},{},{},{}\n", t, phase_name(r.phase), r.a, r.d, r.X, r.h, r.z);
    }
    detail::write_text(path, text);
}

Schedule read_schedule_csv(const std::filesystem::path& path, int initial_k)
{
    detail::LineReader reader(path);
    const auto source = path.string();
    std::string_view line;
    std::vector<std::string_view> cells;
    if (!reader.next(line))
        throw SchemaError(fmt::format("{}: empty schedule", source));
    detail::split(line, cells);
    const std::vector<std::string_view> expected{"step", "phase", "a", "d", "X", "h", "z"};
    if (cells != expected)
        throw SchemaError(fmt::format("{}: header must be 'step,phase,a,d,X,h,z'", source));

    Schedule s;
    s.initial.k = initial_k;
    int k = initial_k;
    while (reader.next(line)) {
        detail::split(line, cells);
        if (cells.size() != 7)
            throw ParseError(source, reader.line_number(), "expected 7 columns");
        StepRecord r;
        try {
            r.phase = parse_phase(cells[1]);
        } catch (const SchemaError& e) {
            throw ParseError(source, reader.line_number(), e.what());
        }
        double step, z;
        if (!detail::parse_cell(cells[0], step) || !detail::parse_cell(cells[2], r.a) ||
            !detail::parse_cell(cells[3], r.d) || !detail::parse_cell(cells[4], r.X) ||
            !detail::parse_cell(cells[5], r.h) || !detail::parse_cell(cells[6], z) || std::isnan(r.X) ||
            std::isnan(r.h) || std::isnan(r.a) || std::isnan(r.d) || std::isnan(z))
            throw ParseError(source, reader.line_number(), "bad numeric field");
        if (step != static_cast<double>(s.steps.size()))
            throw ParseError(source, reader.line_number(), "steps must be consecutive from 0");
        r.z = static_cast<std::uint8_t>(z != 0.0);
        k = next_cycle_flag(k, r.phase);
        r.k = static_cast<std::uint8_t>(k);
        s.steps.push_back(r);
    }
    return s;
}

} // namespace heliodac

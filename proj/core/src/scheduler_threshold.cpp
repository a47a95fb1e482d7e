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
#include "heliodac/scheduler_threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "heliodac/error.hpp"

namespace heliodac {

namespace {

struct Plan {
    int adsorb = 0;
    int desorb = 0;
    double value = 0.0;
    double score = -std::numeric_limits<double>::infinity();
    std::size_t end = 0;
};

// Cycle planning for the threshold policy. A plan is a number of adsorption
// steps followed by a number of desorption steps, both taken on active steps;
// inactive steps and steps short of heat or power are waited out idle. Plans
// are rolled out exactly, so execution reproduces the planned value.
//
// Plans are ranked by value per elapsed step, where net loading left on the
// sorbent is credited at half the incentive: a ton earns its incentive only
// once it has been both adsorbed and released. When the best plan leaves no
// room for a repeat before the window ends, the choice is instead made by a
// two-cycle search that maximizes the value realized inside the window.
class Policy {
public:
    Policy(const ScenarioSlice& sc, const Technology& tech, const ThermalStore& store, double threshold,
           std::size_t max_plan_steps)
        : sc_(sc), tech_(tech), store_(store), threshold_(threshold), n_(sc.size()), max_steps_(max_plan_steps)
    {
        negative_credit_.assign(n_ + 1, 0.0);
        const double power = std::max(tech.P_a, tech.P_d);
        for (std::size_t t = n_; t-- > 0;) {
            const double p = sc.price(t);
            negative_price_ = negative_price_ || p < 0.0;
            negative_credit_[t] = negative_credit_[t + 1] + (p < 0.0 ? -p * power * sc.energy_scale(t) : 0.0);
        }
    }

    bool active(std::size_t t) const { return is_active(sc_.price(t), threshold_); }

    Plan plan(const PlantState& s, std::size_t t) const
    {
        Plan best;
        if (!worth_planning(s))
            return best;
        const double credit = 0.5 * sc_.incentive;
        enumerate(s, t, [&](int na, int nd, double value, const PlantState& q, std::size_t end) {
            if (value < 0.0)
                return;
            const auto elapsed = end - t;
            double score;
            if (n_ - end < elapsed)
                score = value / static_cast<double>(n_ - t);
            else
                score = (value + credit * (q.X - s.X)) / static_cast<double>(elapsed);
            offer(best, na, nd, value, score, end);
        });
        if (best.desorb == 0 || n_ - t >= 3 * (best.end - t))
            return best;

        // Branch and bound: no follow-up cycle can earn more than a full sorbent load
        // plus whatever negative prices pay for the energy.
        struct Candidate {
            int na;
            int nd;
            double value;
            PlantState q;
            std::size_t end;
        };
        std::vector<Candidate> candidates;
        enumerate(s, t, [&](int na, int nd, double value, const PlantState& q, std::size_t end) {
            candidates.push_back({na, nd, value, q, end});
        });
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
        Plan terminal;
        for (const auto& c : candidates) {
            const double bound = c.value + sc_.incentive * tech_.X_max + negative_credit_[c.end];
            if (bound < terminal.score || bound < 0.0)
                continue;
            const double total = c.value + std::max(0.0, best_value(c.q, c.end));
            if (total >= 0.0)
                offer(terminal, c.na, c.nd, c.value, total, c.end);
        }
        return terminal;
    }

private:
    static void offer(Plan& best, int na, int nd, double value, double score, std::size_t end)
    {
        if (score > best.score || (score == best.score && value > best.value)) {
            best.adsorb = na;
            best.desorb = nd;
            best.value = value;
            best.score = score;
            best.end = end;
        }
    }

    bool worth_planning(const PlantState& s) const
    {
        const double upside = sc_.incentive * (s.X + tech_.X_max) - (s.k == 0 ? tech_.S : 0.0);
        return upside >= 0.0 || negative_price_;
    }

    double best_value(const PlantState& s, std::size_t t) const
    {
        if (t >= n_ || !worth_planning(s))
            return 0.0;
        double best = 0.0;
        enumerate(s, t, [&](int, int, double value, const PlantState&, std::size_t) { best = std::max(best, value); });
        return best;
    }

    // Calls f(adsorb_steps, desorb_steps, value, end_state, end_step) for every plan from (s, t).
    template <class F>
    void enumerate(const PlantState& s, std::size_t t, F&& f) const
    {
        const double eps = tech_.rate_epsilon;
        PlantState pre = s;
        std::size_t u = t;
        double pre_value = 0.0;
        int na = 0;
        StepRecord r;
        while (true) {
            if (desorption_cap(pre.X, tech_) > eps)
                rollout_desorb(pre, u, t, na, pre_value, f);

            while (u < n_ && u - t < max_steps_ && !active(u)) {
                advance(sc_, tech_, store_, pre, u, Phase::idle, r);
                pre = state_after(r);
                ++u;
            }
            if (u >= n_ || u - t >= max_steps_)
                break;
            if (pre.X >= tech_.X_max || adsorption_cap(pre.X, tech_, sc_.capture_scale(u)) <= eps)
                break;
            if (advance(sc_, tech_, store_, pre, u, Phase::adsorb, r)) {
                pre_value += r.profit();
                ++na;
            } else {
                advance(sc_, tech_, store_, pre, u, Phase::idle, r);
            }
            pre = state_after(r);
            ++u;
        }
    }

    template <class F>
    void rollout_desorb(PlantState q, std::size_t w, std::size_t t0, int na, double value, F& f) const
    {
        const double eps = tech_.rate_epsilon;
        int nd = 0;
        StepRecord r;
        while (w < n_ && w - t0 < max_steps_) {
            if (!active(w)) {
                advance(sc_, tech_, store_, q, w, Phase::idle, r);
                q = state_after(r);
                ++w;
                continue;
            }
            if (std::min(desorption_cap(q.X, tech_), q.X) <= eps)
                break;
            if (!advance(sc_, tech_, store_, q, w, Phase::desorb, r)) {
                advance(sc_, tech_, store_, q, w, Phase::idle, r);
                q = state_after(r);
                ++w;
                continue;
            }
            value += r.profit();
            q = state_after(r);
            ++w;
            ++nd;
            f(na, nd, value, q, w);
        }
    }

    const ScenarioSlice& sc_;
    const Technology& tech_;
    const ThermalStore& store_;
    double threshold_;
    std::size_t n_;
    std::size_t max_steps_;
    bool negative_price_ = false;
    std::vector<double> negative_credit_;
};

struct Simulation {
    double profit = 0.0;
    double co2 = 0.0;
    double X_end = 0.0;
    double committed_profit = 0.0;
    double committed_co2 = 0.0;
    PlantState committed_state;
};

Simulation simulate(const ScenarioSlice& sc, const Technology& tech, const ThermalStore& store, double threshold,
                    const PlantState& start, std::size_t commit, std::size_t max_plan_steps,
                    std::vector<StepRecord>* log)
{
    Policy policy(sc, tech, store, threshold, max_plan_steps);

    Simulation out;
    out.committed_state = start;
    PlantState s = start;
    int adsorb_left = 0;
    int desorb_left = 0;
    const std::size_t n = sc.size();
    StepRecord r;
    for (std::size_t t = 0; t < n; ++t) {
        Phase phase = Phase::idle;
        if (policy.active(t)) {
            if (adsorb_left == 0 && desorb_left == 0) {
                const Plan p = policy.plan(s, t);
                adsorb_left = p.adsorb;
                desorb_left = p.desorb;
            }
            if (adsorb_left > 0)
                phase = Phase::adsorb;
            else if (desorb_left > 0)
                phase = Phase::desorb;
        }
        if (phase != Phase::idle && advance(sc, tech, store, s, t, phase, r)) {
            if (phase == Phase::adsorb)
                --adsorb_left;
            else
                --desorb_left;
        } else {
            advance(sc, tech, store, s, t, Phase::idle, r);
        }
        s = state_after(r);
        out.profit += r.profit();
        out.co2 += r.d;
        if (t < commit) {
            out.committed_profit += r.profit();
            out.committed_co2 += r.d;
            out.committed_state = s;
            if (log)
                log->push_back(r);
        }
    }
    out.X_end = s.X;
    return out;
}

} // namespace

void validate(const ThresholdConfig& cfg)
{
    if (cfg.chunk_steps < 1)
        throw ValidationError("chunk_steps must be >= 1");
    if (!(cfg.guess_min < cfg.guess_max))
        throw ValidationError("guess_min must be below guess_max");
    if (!(cfg.guess_spacing > 0) || !(cfg.tolerance > 0))
        throw ValidationError("guess_spacing and tolerance must be positive");
    if (cfg.max_plan_steps < 2)
        throw ValidationError("max_plan_steps must be >= 2");
}

double boost(double profit_chunk, double co2_chunk, double X_remain)
{
    if (co2_chunk < 0)
        throw ArgumentError("desorbed CO2 must be >= 0");
    if (co2_chunk == 0.0 || X_remain == 0.0)
        return 0.0;
    return profit_chunk / co2_chunk * X_remain;
}

ChunkResult simulate_policy(const ScenarioSlice& slice, const Technology& tech, const ThermalStore& store,
                            double threshold, const PlantState& start, std::size_t commit_steps,
                            std::vector<StepRecord>* log)
{
    if (slice.size() == 0)
        throw ArgumentError("policy simulation needs a non-empty slice");
    const auto commit = commit_steps == 0 ? slice.size() : std::min(commit_steps, slice.size());
    const auto sim = simulate(slice, tech, store, threshold, start, commit, ThresholdConfig{}.max_plan_steps, log);
    ChunkResult out;
    out.lambda_opt = threshold;
    out.profit = sim.committed_profit;
    out.co2_desorbed = sim.committed_co2;
    out.X_remain = sim.committed_state.X;
    out.boost = boost(out.profit, out.co2_desorbed, out.X_remain);
    out.end_state = sim.committed_state;
    out.steps = commit;
    return out;
}

ChunkResult optimize_chunk(const ScenarioSlice& window, const Technology& tech, const ThermalStore& store,
                           const ThresholdConfig& cfg, const PlantState& start, std::size_t commit_steps,
                           std::vector<StepRecord>* log)
{
    validate(cfg);
    if (window.size() == 0)
        throw ArgumentError("chunk optimization needs a non-empty window");
    const auto commit = std::min(commit_steps == 0 ? cfg.chunk_steps : commit_steps, window.size());

    std::vector<double> levels(window.size());
    for (std::size_t t = 0; t < window.size(); ++t)
        levels[t] = window.price(t);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // The objective only depends on which prices sit at or below the threshold.
    std::vector<double> memo(levels.size() + 1, std::numeric_limits<double>::quiet_NaN());
    auto level_of = [&](double lambda) {
        return static_cast<std::size_t>(std::upper_bound(levels.begin(), levels.end(), lambda) - levels.begin());
    };
    auto objective = [&](double lambda) {
        const auto key = level_of(lambda);
        if (std::isnan(memo[key])) {
            const auto sim = simulate(window, tech, store, lambda, start, 0, cfg.max_plan_steps, nullptr);
            memo[key] = sim.profit + boost(sim.profit, sim.co2, sim.X_end);
        }
        return memo[key];
    };

    double best_lambda = cfg.guess_min;
    double best_value = -std::numeric_limits<double>::infinity();
    auto probe = [&](double lambda) {
        const double v = objective(lambda);
        if (v > best_value) {
            best_value = v;
            best_lambda = lambda;
        }
        return v;
    };

    constexpr double inv_phi = 0.6180339887498949;
    const auto guesses = static_cast<std::size_t>(std::floor((cfg.guess_max - cfg.guess_min) / cfg.guess_spacing + 1e-9));
    for (std::size_t i = 0; i <= guesses; ++i) {
        const double g = cfg.guess_min + static_cast<double>(i) * cfg.guess_spacing;
        probe(g);
        double a = g - cfg.guess_spacing;
        double b = g + cfg.guess_spacing;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = probe(c);
        double fd = probe(d);
        while (b - a > cfg.tolerance) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = probe(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = probe(d);
            }
        }
        probe(0.5 * (a + b));
    }

    // Polish: centre the threshold on its plateau between adjacent price levels.
    const auto key = level_of(best_lambda);
    double lambda = best_lambda;
    if (key == 0)
        lambda = cfg.guess_min < levels.front() ? cfg.guess_min : levels.front() - 0.5 * cfg.guess_spacing;
    else if (key < levels.size())
        lambda = 0.5 * (levels[key - 1] + levels[key]);

    const auto sim = simulate(window, tech, store, lambda, start, commit, cfg.max_plan_steps, log);
    ChunkResult out;
    out.lambda_opt = lambda;
    out.profit = sim.committed_profit;
    out.co2_desorbed = sim.committed_co2;
    out.X_remain = sim.committed_state.X;
    out.boost = boost(out.profit, out.co2_desorbed, out.X_remain);
    out.end_state = sim.committed_state;
    out.steps = commit;
    return out;
}

YearResult run_year(const ScenarioSlice& scenario, const Technology& tech, const ThermalStore& store,
                    const ThresholdConfig& cfg, const PlantState& initial)
{
    validate(cfg);
    validate(scenario);
    validate(tech);
    validate(initial, tech, store, scenario);

    YearResult out;
    out.schedule.initial = initial;
    out.schedule.steps.reserve(scenario.size());
    PlantState state = initial;
    const auto n = scenario.size();
    for (std::size_t offset = 0; offset < n; offset += cfg.chunk_steps) {
        const auto commit = std::min(cfg.chunk_steps, n - offset);
        const auto len = std::min(cfg.chunk_steps + cfg.lookahead_steps, n - offset);
        auto res = optimize_chunk(scenario.sub(offset, len), tech, store, cfg, state, commit, &out.schedule.steps);
        res.offset = offset;
        state = res.end_state;
        out.chunks.push_back(res);
    }
    out.schedule.totals = tally(out.schedule.steps, tech);
    return out;
}

} // namespace heliodac

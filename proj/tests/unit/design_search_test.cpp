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
#include <cmath>

#include <gtest/gtest.h>

#include "heliodac/design_search.hpp"
#include "heliodac/error.hpp"
#include "support.hpp"

namespace heliodac {
namespace {

TEST(Grid, ValuesAndExpansion)
{
    EXPECT_EQ(grid_values(2, 4, 1), (std::vector<double>{2, 3, 4}));
    EXPECT_EQ(grid_values(350, 450, 50), (std::vector<double>{350, 400, 450}));
    EXPECT_EQ(grid_values(1, 1, 1), (std::vector<double>{1}));
    EXPECT_THROW(grid_values(3, 2, 1), ArgumentError);
    EXPECT_THROW(grid_values(1, 2, 0), ArgumentError);

    SweepBounds b;
    b.cp = {2, 3};
    b.h_rated = {35, 70, 105};
    const DesignParams base;
    const auto g = expand_grid(b, base);
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(g[0].cp, 2);
    EXPECT_EQ(g[0].h_rated, 35);
    EXPECT_EQ(g[1].h_rated, 70);
    EXPECT_EQ(g[3].cp, 3);
    for (const auto& d : g) {
        EXPECT_EQ(d.cr, base.cr);
        EXPECT_EQ(d.T_target, base.T_target);
    }
}

TEST(Objective, Names)
{
    EXPECT_EQ(parse_objective("lco2"), Objective::lco2);
    EXPECT_EQ(parse_objective("abatement_per_capex"), Objective::abatement_per_capex);
    EXPECT_EQ(objective_name(Objective::abatement_per_capex), "abatement_per_capex");
    EXPECT_THROW(parse_objective("profit"), ArgumentError);
}

SweepPoint point(double cp, double lco2, double capex)
{
    SweepPoint p;
    p.design.cp = cp;
    p.lco2 = lco2;
    p.total_capex = capex;
    p.abatement_per_capex = 1.0 / capex;
    return p;
}

TEST(Argmin, TieGoesToSmallerCapex)
{
    const std::vector<SweepPoint> pts{point(4, 200, 9e6), point(3, 200, 8e6), point(2, 210, 7e6)};
    EXPECT_EQ(select_argmin(pts, Objective::lco2), 1u);
    EXPECT_EQ(select_argmin(pts, Objective::abatement_per_capex), 2u);
}

TEST(Argmin, UndefinedPointsLose)
{
    auto bad = point(1, std::nan(""), 1e6);
    auto err = point(2, 100, 1e6);
    err.error = "emissions exceed capture";
    const std::vector<SweepPoint> pts{bad, err, point(3, 500, 9e6)};
    EXPECT_EQ(select_argmin(pts, Objective::lco2), 2u);
    EXPECT_TRUE(std::isinf(objective_score(err, Objective::lco2)));
    EXPECT_THROW(select_argmin({}, Objective::lco2), ArgumentError);
}

TEST(Sweep, SinglePointIsArgmin)
{
    const auto site = testing::synthetic_site(2, 0.9, 5);
    const auto settings = testing::mof_settings();
    const auto r = sweep(site, settings, {}, DesignParams{}, Objective::lco2, 1);
    ASSERT_EQ(r.points.size(), 1u);
    EXPECT_EQ(r.argmin, 0u);
    EXPECT_TRUE(std::isfinite(r.points[0].lco2));
    EXPECT_GT(r.points[0].capacity_factor, 0.0);
}

TEST(Sweep, BudgetAndDesignGuards)
{
    const auto site = testing::synthetic_site(1, 0.9, 5);
    const auto settings = testing::mof_settings();
    SweepBounds b;
    b.cp = {1, 2, 3};
    b.h_rated = {10, 20};
    EXPECT_THROW(sweep(site, settings, b, DesignParams{}, Objective::lco2, 1, 5), ArgumentError);
    b = {};
    b.cr = {0.5};
    EXPECT_THROW(sweep(site, settings, b, DesignParams{}, Objective::lco2, 1), DesignError);
}

TEST(Sweep, RepeatableAcrossWorkerCounts)
{
    const auto site = testing::synthetic_site(2, 0.9, 6);
    const auto settings = testing::mof_settings();
    SweepBounds b;
    b.cp = {2, 3};
    b.T_target = {350, 400};
    const auto one = sweep(site, settings, b, DesignParams{}, Objective::lco2, 1);
    const auto two = sweep(site, settings, b, DesignParams{}, Objective::lco2, 3);
    ASSERT_EQ(one.points.size(), 4u);
    EXPECT_EQ(one.argmin, two.argmin);
    for (std::size_t i = 0; i < one.points.size(); ++i) {
        EXPECT_EQ(one.points[i].lco2, two.points[i].lco2);
        EXPECT_EQ(one.points[i].profit, two.points[i].profit);
    }
}

TEST(Incentives, ProfitAndCapacityRiseWithIncentive)
{
    const auto site = testing::synthetic_site(2, 0.9, 7);
    const auto settings = testing::mof_settings();
    const auto pts = incentive_sweep(site, settings, DesignParams{}, {0, 50, 100, 200, 300}, {35, 70}, 2);
    ASSERT_EQ(pts.size(), 5u);
    EXPECT_LE(pts[0].profit, 0.0);
    EXPECT_NEAR(pts[0].captured_t, 0.0, 1e-9);
    EXPECT_TRUE(std::isinf(pts[0].payback_years));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        EXPECT_GE(pts[i].profit, pts[i - 1].profit);
        EXPECT_GE(pts[i].capacity_factor + 1e-12, pts[i - 1].capacity_factor);
    }
    EXPECT_TRUE(monotonicity_breaks(pts).empty());
    EXPECT_THROW(incentive_sweep(site, settings, DesignParams{}, {-1}, {}, 1), ArgumentError);
}

TEST(Incentives, BreaksAreReported)
{
    std::vector<IncentivePoint> pts(3);
    pts[0].incentive = 0;
    pts[1].incentive = 100;
    pts[1].profit = 10;
    pts[2].incentive = 200;
    pts[2].profit = 5;
    EXPECT_EQ(monotonicity_breaks(pts), (std::vector<std::size_t>{2}));
}

} // namespace
} // namespace heliodac

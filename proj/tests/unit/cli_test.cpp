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
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "support.hpp"

namespace heliodac {
namespace {

using testing::TempDir;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json read_json(const std::filesystem::path& p)
{
    return nlohmann::json::parse(testing::read_text(p));
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override { config = testing::write_grid_config(dir.path(), testing::synthetic_site(2, 0.9, 17)); }
    TempDir dir;
    std::filesystem::path config;
};

TEST_F(Cli, Help)
{
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"optimize", "--help"}).code, 0);
}

TEST_F(Cli, UsageErrors)
{
    auto r = run({});
    EXPECT_EQ(r.code, 2);
    r = run({"optimize", "--config", config.string(), "--bogus"});
    EXPECT_EQ(r.code, 2);
    r = run({"frobnicate"});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, MissingConfigNamed)
{
    const auto missing = (dir / "nope.json").string();
    const auto r = run({"optimize", "--config", missing});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(missing), std::string::npos);
}

TEST_F(Cli, ExactHorizonGuard)
{
    const auto r = run({"exact", "--config", config.string(), "--horizon", "20"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("16"), std::string::npos);
}

TEST_F(Cli, BadJobs)
{
    EXPECT_EQ(run({"optimize", "--config", config.string(), "--jobs", "0"}).code, 2);
}

TEST_F(Cli, OptimizeThenVerify)
{
    const auto out = dir / "run";
    auto r = run({"optimize", "--config", config.string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = read_json(out / "summary.json");
    EXPECT_TRUE(summary.contains("profit"));
    EXPECT_TRUE(summary.contains("lco2"));
    EXPECT_GT(summary["capacity_factor"].get<double>(), 0.0);
    EXPECT_TRUE(std::filesystem::exists(out / "schedule.csv"));
    EXPECT_TRUE(std::filesystem::exists(out / "hourly_profile.csv"));
    const auto manifest = read_json(out / "manifest.json");
    EXPECT_FALSE(manifest.dump().empty());

    r = run({"verify", "--config", config.string(), "--schedule", (out / "schedule.csv").string(), "--out",
             out.string(), "--min-feasible", "0.9"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    const auto v = read_json(out / "verify.json");
    EXPECT_TRUE(v["violations"].empty());
    EXPECT_TRUE(std::filesystem::exists(out / "cycles.csv"));
}

TEST_F(Cli, IncentiveOverride)
{
    ASSERT_EQ(run({"optimize", "--config", config.string(), "--incentive", "75", "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run({"sweep", "--config", config.string(), "--incentive", "75", "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run({"sweep", "--config", config.string(), "--out", (dir / "b").string()}).code, 0);
    EXPECT_EQ(read_json(dir / "a" / "summary.json")["incentive"].get<double>(), 75.0);
    EXPECT_NE(testing::read_text(dir / "a" / "sweep.csv"), testing::read_text(dir / "b" / "sweep.csv"));
}

TEST_F(Cli, RepeatableOutputs)
{
    ASSERT_EQ(run({"optimize", "--config", config.string(), "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run({"optimize", "--config", config.string(), "--out", (dir / "b").string(), "--jobs", "2"}).code, 0);
    EXPECT_EQ(testing::read_text(dir / "a" / "schedule.csv"), testing::read_text(dir / "b" / "schedule.csv"));
}

TEST_F(Cli, VerifyRejectsTamperedSchedule)
{
    const auto out = dir / "run";
    ASSERT_EQ(run({"optimize", "--config", config.string(), "--out", out.string()}).code, 0);
    auto text = testing::read_text(out / "schedule.csv");
    const auto first = text.find('\n') + 1;
    const auto line_end = text.find('\n', first);
    auto line = text.substr(first, line_end - first);
    // Claim an impossible state on the first step.
    const auto pos = line.find(',', line.find(',') + 1);
    line = line.substr(0, pos + 1) + "99" + line.substr(line.find(',', pos + 1));
    text.replace(first, line_end - first, line);
    testing::write_text(dir / "bad.csv", text);
    const auto r =
        run({"verify", "--config", config.string(), "--schedule", (dir / "bad.csv").string(), "--out", out.string()});
    EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, ExactAndIncentives)
{
    const auto out = dir / "x";
    auto r = run({"exact", "--config", config.string(), "--horizon", "8", "--offset", "130", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto s = read_json(out / "exact_summary.json");
    EXPECT_GE(s["profit"].get<double>() + 1e-9, s["threshold_policy"]["profit"].get<double>());

    r = run({"incentives", "--config", config.string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(out / "incentives.csv"));
    r = run({"incentives", "--config", config.string(), "--values", "-5", "--out", out.string()});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, SweepAndBudget)
{
    const auto out = dir / "s";
    auto r = run({"sweep", "--config", config.string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto s = read_json(out / "sweep_summary.json");
    EXPECT_EQ(s["points"].get<int>(), 2);
    testing::write_text(dir / "bounds.json", R"({"cp": [1, 2, 3], "budget": 2})");
    r = run({"sweep", "--config", config.string(), "--bounds", (dir / "bounds.json").string(), "--out",
             out.string()});
    EXPECT_EQ(r.code, 2);
}

} // namespace
} // namespace heliodac

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
#include <gtest/gtest.h>

#include "heliodac/config.hpp"
#include "heliodac/error.hpp"
#include "heliodac/hashing.hpp"
#include "heliodac/parallel.hpp"
#include "support.hpp"

namespace heliodac {
namespace {

using nlohmann::json;
using testing::TempDir;

json base_config()
{
    return json{{"schema_version", 1}, {"technologies", (testing::data_dir() / "technologies.json").string()}};
}

TEST(Config, Defaults)
{
    const auto cfg = config_from_json(base_config(), "/tmp");
    EXPECT_EQ(cfg.technology, "MOF");
    EXPECT_EQ(cfg.settings.technology.name, "MOF");
    EXPECT_EQ(cfg.settings.mode, Mode::grid);
    EXPECT_EQ(cfg.design.cp, 3.0);
    EXPECT_EQ(cfg.design.h_rated, 70.0);
    EXPECT_EQ(cfg.settings.storage.h_rated, 70.0);
    EXPECT_EQ(cfg.output_dir, std::filesystem::path("/tmp/out"));
}

TEST(Config, UnknownKeysRejected)
{
    auto j = base_config();
    j["desing"] = json::object();
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
    j = base_config();
    j["design"] = {{"cp", 3}, {"hrated", 70}};
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
}

TEST(Config, Versions)
{
    auto j = base_config();
    j["schema_version"] = 2;
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
    j.erase("schema_version");
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
}

TEST(Config, BadValues)
{
    auto j = base_config();
    j["design"] = {{"cp", "three"}};
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
    j = base_config();
    j["technology"] = "NOPE";
    EXPECT_THROW(config_from_json(j, "/tmp"), ValidationError);
    j = base_config();
    j["design"] = {{"pv_kw", 100}};
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
    j = base_config();
    j["scenario"] = {{"carbon_intensity", "a.csv"}, {"fuel_mix", "b.csv"}, {"emission_factors", "c.json"}};
    EXPECT_THROW(config_from_json(j, "/tmp"), SchemaError);
    j = base_config();
    j["solar_thermal"] = {{"per_step_retention", 1.5}};
    EXPECT_THROW(config_from_json(j, "/tmp"), ValidationError);
}

TEST(Config, SweepAxes)
{
    const auto b = bounds_from_json(json{{"cp", {{"min", 2}, {"max", 4}, {"step", 1}}}, {"cr", 1}, {"h_rated", {35, 70}}});
    EXPECT_EQ(b.cp, (std::vector<double>{2, 3, 4}));
    EXPECT_EQ(b.cr, (std::vector<double>{1}));
    EXPECT_EQ(b.h_rated, (std::vector<double>{35, 70}));
    EXPECT_THROW(bounds_from_json(json{{"cp", {{"min", 2}, {"max", 4}}}}), SchemaError);
    EXPECT_THROW(bounds_from_json(json{{"tt", 1}}), SchemaError);
}

TEST(Config, FilesAndPaths)
{
    TempDir dir;
    const auto path = testing::write_grid_config(dir.path(), testing::synthetic_site(2, 0.9, 3));
    const auto cfg = load_config(path);
    EXPECT_EQ(cfg.scenario.price, dir / "price.csv");
    EXPECT_EQ(cfg.output_dir, dir / "out");
    EXPECT_EQ(cfg.bounds.cp, (std::vector<double>{2, 3}));
    EXPECT_EQ(cfg.incentives, (std::vector<double>{0, 200}));

    const auto site = load_site(cfg);
    EXPECT_EQ(site.size(), 2u * 288u);
    EXPECT_EQ(site.prices.size(), site.size());
    EXPECT_EQ(site.temperature.size(), site.size());
    EXPECT_EQ(input_files(cfg).size(), 5u);

    EXPECT_THROW(load_config(dir / "missing.json"), ValidationError);
    testing::write_text(dir / "broken.json", "{\"schema_version\": ");
    EXPECT_THROW(load_config(dir / "broken.json"), SchemaError);
}

TEST(Hashing, KnownDigests)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    TempDir dir;
    testing::write_text(dir / "a.txt", "abc");
    EXPECT_EQ(sha256_file(dir / "a.txt"), sha256_hex("abc"));
}

TEST(Hashing, Manifest)
{
    TempDir dir;
    testing::write_text(dir / "in.csv", "abc");
    testing::write_text(dir / "out.csv", "");
    const auto m = make_manifest(json{{"x", 1}}, {{"price", dir / "in.csv"}}, {dir / "out.csv"}, "optimize");
    const auto again = make_manifest(json{{"x", 1}}, {{"price", dir / "in.csv"}}, {dir / "out.csv"}, "optimize");
    EXPECT_EQ(m.dump(), again.dump());
    EXPECT_NE(m.dump().find(sha256_hex("abc")), std::string::npos);
    write_manifest(dir.path(), m);
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
}

TEST(Parallel, Jobs)
{
    EXPECT_GE(default_jobs(), 1u);
    EXPECT_EQ(resolve_jobs(3), 3u);
    EXPECT_EQ(resolve_jobs(std::nullopt), default_jobs());
    EXPECT_THROW(resolve_jobs(0), ArgumentError);
    const auto v = ordered_map<std::size_t>(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i)
        EXPECT_EQ(v[i], i * i);
}

} // namespace
} // namespace heliodac

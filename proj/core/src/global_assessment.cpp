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
#include "heliodac/global_assessment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "csv.hpp"
#include "heliodac/error.hpp"
#include "heliodac/parallel.hpp"

namespace heliodac {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string clean_flag(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

CfStats cf_statistics(const std::vector<double>& cf, std::int64_t step_seconds)
{
    CfStats out;
    if (cf.empty())
        return out;
    out.mean = std::accumulate(cf.begin(), cf.end(), 0.0) / static_cast<double>(cf.size());
    const auto per_day = static_cast<std::size_t>(std::max<std::int64_t>(1, 86400 / step_seconds));
    std::vector<double> days;
    for (std::size_t i = 0; i + per_day <= cf.size(); i += per_day)
        days.push_back(std::accumulate(cf.begin() + static_cast<std::ptrdiff_t>(i),
                                       cf.begin() + static_cast<std::ptrdiff_t>(i + per_day), 0.0) /
                       static_cast<double>(per_day));
    if (days.size() < 2)
        return out;
    const double m = std::accumulate(days.begin(), days.end(), 0.0) / static_cast<double>(days.size());
    double ss = 0.0;
    for (double d : days)
        ss += (d - m) * (d - m);
    out.daily_std = std::sqrt(ss / static_cast<double>(days.size()));
    return out;
}

SiteData load_location(const Location& loc, std::int64_t step_seconds)
{
    const LoadOptions opts{.fill_missing = true};
    const auto solar = align_to_step(load_series(loc.solar_path, SeriesKind::solar, opts), step_seconds);
    check_values(solar, loc.solar_path.string());
    if (loc.ambient_path.empty())
        throw DataError("no ambient series");
    auto amb = load_ambient(loc.ambient_path, opts);
    const auto T = align_to_step(amb.temperature, step_seconds);
    const auto RH = align_to_step(amb.humidity, step_seconds);
    check_values(RH, loc.ambient_path.string());
    if (T.start != solar.start)
        throw SchemaError(fmt::format("{} and {} start at different times", loc.solar_path.string(),
                                      loc.ambient_path.string()));
    if (T.size() < solar.size())
        throw SchemaError(fmt::format("{} is shorter than {}", loc.ambient_path.string(), loc.solar_path.string()));

    SiteData site;
    site.start = solar.start;
    site.step_seconds = step_seconds;
    site.dni_cf = solar.values;
    site.temperature.assign(T.values.begin(), T.values.begin() + static_cast<std::ptrdiff_t>(solar.size()));
    site.humidity.assign(RH.values.begin(), RH.values.begin() + static_cast<std::ptrdiff_t>(solar.size()));
    return site;
}

LocationResult assess_site(double lat, double lon, const SiteData& site, const DesignParams& design,
                           const ModelSettings& settings)
{
    LocationResult r;
    r.lat = lat;
    r.lon = lon;
    const auto stats = cf_statistics(site.dni_cf, site.step_seconds);
    r.cf_mean = stats.mean;
    r.cf_daily_std = stats.daily_std;

    ModelSettings s = settings;
    s.mode = Mode::standalone;
    const Evaluation nominal = evaluate(site, design, s, false);
    const Evaluation ambient = evaluate(site, design, s, true);
    r.dac_cf = nominal.totals.capacity_factor();
    r.lco2 = nominal.cost ? nominal.cost->lco2 : nan;
    r.lco2_ambient = ambient.cost ? ambient.cost->lco2 : nan;
    if (!nominal.cost)
        r.flag = clean_flag("nominal: " + nominal.cost_error);
    else if (!ambient.cost)
        r.flag = clean_flag("ambient: " + ambient.cost_error);
    return r;
}

std::vector<LocationResult> assess(const LocationGrid& grid, const DesignParams& design,
                                   const ModelSettings& settings, std::size_t jobs, std::int64_t step_seconds)
{
    validate(design, Mode::standalone);
    return ordered_map<LocationResult>(grid.points.size(), jobs, [&](std::size_t i) {
        const Location& loc = grid.points[i];
        try {
            return assess_site(loc.lat, loc.lon, load_location(loc, step_seconds), design, settings);
        } catch (const Error& e) {
            LocationResult r;
            r.lat = loc.lat;
            r.lon = loc.lon;
            r.lco2 = r.lco2_ambient = nan;
            r.cf_mean = loc.cf_mean.value_or(nan);
            r.cf_daily_std = nan;
            r.dac_cf = nan;
            r.flag = clean_flag(e.what());
            return r;
        }
    });
}

QuadraticBound fit_lower_bound(const std::vector<double>& cf, const std::vector<double>& lco2)
{
    if (cf.size() != lco2.size())
        throw ArgumentError("fit inputs differ in length");
    QuadraticBound q;
    const auto n = static_cast<Eigen::Index>(cf.size());
    if (n == 0)
        return q;
    const Eigen::Index degree = std::min<Eigen::Index>(2, n - 1);
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= degree; ++j)
            A(i, j) = std::pow(cf[static_cast<std::size_t>(i)], static_cast<double>(j));
        y(i) = lco2[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    q.c0 = c(0);
    q.c1 = degree >= 1 ? c(1) : 0.0;
    q.c2 = degree >= 2 ? c(2) : 0.0;
    double shift = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cf.size(); ++i)
        shift = std::min(shift, lco2[i] - q(cf[i]));
    q.c0 += shift;
    // Rounding in the shift can leave a residual a few ulps below zero.
    for (std::size_t i = 0; i < cf.size(); ++i)
        if (double r = lco2[i] - q(cf[i]); r < 0)
            q.c0 += r;
    return q;
}

GlobalSummary summarize(const std::vector<LocationResult>& results, const std::vector<double>& thresholds,
                        std::size_t best_n)
{
    if (results.empty())
        throw ArgumentError("no results to summarize");
    GlobalSummary s;
    s.total = results.size();
    std::vector<LocationResult> ok;
    for (const auto& r : results)
        if (r.ok() && std::isfinite(r.lco2))
            ok.push_back(r);
    s.assessed = ok.size();

    for (double t : thresholds) {
        ThresholdShare share;
        share.threshold = t;
        share.count = static_cast<std::size_t>(
            std::count_if(ok.begin(), ok.end(), [t](const LocationResult& r) { return r.lco2 < t; }));
        share.fraction = ok.empty() ? 0.0 : static_cast<double>(share.count) / static_cast<double>(ok.size());
        s.below.push_back(share);
    }

    std::vector<std::size_t> order(ok.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ok[a].lco2 < ok[b].lco2; });
    for (std::size_t i = 0; i < std::min(best_n, order.size()); ++i)
        s.best.push_back(ok[order[i]]);

    std::vector<double> cf, y;
    for (const auto& r : ok) {
        cf.push_back(r.cf_mean);
        y.push_back(r.lco2);
    }
    s.lower_bound = fit_lower_bound(cf, y);
    return s;
}

std::vector<GridDiff> diff_grid(const std::vector<LocationResult>& a, const std::vector<GridValue>& b,
                                double tolerance)
{
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (std::abs(b[i].lat - b[j].lat) <= tolerance && std::abs(b[i].lon - b[j].lon) <= tolerance)
                throw DataError(fmt::format("reference grid has duplicate point ({}, {})", b[i].lat, b[i].lon));

    std::vector<GridDiff> out;
    out.reserve(a.size());
    for (const auto& p : a) {
        GridDiff d;
        d.lat = p.lat;
        d.lon = p.lon;
        d.difference = nan;
        for (const auto& q : b) {
            if (std::abs(q.lat - p.lat) <= tolerance && std::abs(q.lon - p.lon) <= tolerance) {
                d.matched = true;
                d.difference = p.lco2 - q.value;
                break;
            }
        }
        out.push_back(d);
    }
    return out;
}

void write_global_csv(const std::filesystem::path& path, const std::vector<LocationResult>& results)
{
    auto num = [](double v) { return std::isfinite(v) ? fmt::format("{}", v) : std::string(); };
    std::string text = "lat,lon,lco2,lco2_ambient,cf_mean,cf_daily_std,dac_cf,flag\n";
    for (const auto& r : results)
        text += fmt::format("{},{},{},{},{},{},{},{}\n", r.lat, r.lon, num(r.lco2), num(r.lco2_ambient),
                            num(r.cf_mean), num(r.cf_daily_std), num(r.dac_cf), clean_flag(r.flag));
    detail::write_text(path, text);
}

std::vector<LocationResult> read_global_csv(const std::filesystem::path& path)
{
    detail::LineReader reader(path);
    const auto source = path.string();
    std::string_view line;
    std::vector<std::string_view> cells;
    if (!reader.next(line))
        throw SchemaError(fmt::format("{}: empty file", source));
    detail::split(line, cells);
    const std::vector<std::string_view> expected{"lat",    "lon",          "lco2",   "lco2_ambient",
                                                 "cf_mean", "cf_daily_std", "dac_cf", "flag"};
    if (cells != expected)
        throw SchemaError(
            fmt::format("{}: header must be 'lat,lon,lco2,lco2_ambient,cf_mean,cf_daily_std,dac_cf,flag'", source));
    std::vector<LocationResult> out;
    while (reader.next(line)) {
        detail::split(line, cells);
        if (cells.size() != 8)
            throw ParseError(source, reader.line_number(), "expected 8 columns");
        LocationResult r;
        double* fields[] = {&r.lat, &r.lon, &r.lco2, &r.lco2_ambient, &r.cf_mean, &r.cf_daily_std, &r.dac_cf};
        for (std::size_t i = 0; i < 7; ++i)
            if (!detail::parse_cell(cells[i], *fields[i]))
                throw ParseError(source, reader.line_number(), fmt::format("bad value '{}'", cells[i]));
        if (std::isnan(r.lat) || std::isnan(r.lon))
            throw ParseError(source, reader.line_number(), "missing coordinates");
        r.flag = std::string(cells[7]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<GridValue> read_grid_values(const std::filesystem::path& path)
{
    detail::LineReader reader(path);
    const auto source = path.string();
    std::string_view line;
    std::vector<std::string_view> cells;
    if (!reader.next(line))
        throw SchemaError(fmt::format("{}: empty file", source));
    detail::split(line, cells);
    if (cells.size() < 3 || cells[0] != "lat" || cells[1] != "lon" || cells[2] != "lco2")
        throw SchemaError(fmt::format("{}: header must start with 'lat,lon,lco2'", source));
    std::vector<GridValue> out;
    while (reader.next(line)) {
        detail::split(line, cells);
        if (cells.size() < 3)
            throw ParseError(source, reader.line_number(), "expected at least 3 columns");
        GridValue v;
        if (!detail::parse_cell(cells[0], v.lat) || !detail::parse_cell(cells[1], v.lon) ||
            !detail::parse_cell(cells[2], v.value) || std::isnan(v.lat) || std::isnan(v.lon))
            throw ParseError(source, reader.line_number(), "bad numeric field");
        out.push_back(v);
    }
    return out;
}

void write_diff_csv(const std::filesystem::path& path, const std::vector<GridDiff>& diffs)
{
    std::string text = "lat,lon,difference,matched\n";
    for (const auto& d : diffs)
        text += fmt::format("{},{},{},{}\n", d.lat, d.lon, d.matched ? fmt::format("{}", d.difference) : "",
                            d.matched ? 1 : 0);
    detail::write_text(path, text);
}

} // namespace heliodac

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
#include "heliodac/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "heliodac/error.hpp"

namespace heliodac {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : ValidationError(fmt::format("{}:{}: {}", source, line, what)), line_(line)
{
}

namespace detail {

LineReader::LineReader(const std::filesystem::path& path) : in_(path)
{
    if (!in_)
        throw ValidationError(fmt::format("cannot open {}", path.string()));
}

bool LineReader::next(std::string_view& line)
{
    while (std::getline(in_, buffer_)) {
        ++line_no_;
        line = trim(buffer_);
        if (!line.empty())
            return true;
    }
    return false;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError(fmt::format("cannot open {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(fmt::format("cannot write {}", path.string()));
    out << text;
    if (!out)
        throw Error(fmt::format("write failed for {}", path.string()));
}

} // namespace detail

namespace {

struct Layout {
    std::vector<std::string_view> header;
    std::size_t column;
};

Layout layout_of(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::price:
        return {{"timestamp", "price_usd_per_mwh"}, 1};
    case SeriesKind::solar:
        return {{"timestamp", "dni_cf"}, 1};
    case SeriesKind::carbon_intensity:
        return {{"timestamp", "carbon_intensity_t_per_mwh"}, 1};
    case SeriesKind::ambient_temperature:
        return {{"timestamp", "temp_c", "rh"}, 1};
    case SeriesKind::ambient_humidity:
        return {{"timestamp", "temp_c", "rh"}, 2};
    }
    return {{}, 0};
}

bool parse_int(std::string_view s, int& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

struct RawTable {
    std::vector<TimePoint> times;
    std::vector<std::vector<double>> columns;
    std::vector<std::size_t> lines;
    std::vector<std::string> header;
};

RawTable read_table(const std::filesystem::path& path)
{
    detail::LineReader reader(path);
    const std::string source = path.string();
    std::string_view line;
    if (!reader.next(line))
        throw SchemaError(fmt::format("{}: empty file", source));

    RawTable table;
    std::vector<std::string_view> cells;
    detail::split(line, cells);
    for (auto c : cells)
        table.header.emplace_back(c);
    if (table.header.empty() || table.header.front() != "timestamp")
        throw SchemaError(fmt::format("{}: first column must be 'timestamp'", source));
    table.columns.resize(table.header.size() - 1);

    while (reader.next(line)) {
        detail::split(line, cells);
        if (cells.size() != table.header.size())
            throw ParseError(source, reader.line_number(),
                             fmt::format("expected {} columns, found {}", table.header.size(), cells.size()));
        TimePoint t;
        try {
            t = parse_timestamp(cells[0]);
        } catch (const ValidationError& e) {
            throw ParseError(source, reader.line_number(), e.what());
        }
        table.times.push_back(t);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v;
            if (!detail::parse_cell(cells[c], v))
                throw ParseError(source, reader.line_number(), fmt::format("cannot parse '{}'", cells[c]));
            table.columns[c - 1].push_back(v);
        }
        table.lines.push_back(reader.line_number());
    }
    if (table.times.empty())
        throw SchemaError(fmt::format("{}: no data rows", source));
    return table;
}

std::int64_t uniform_step(const RawTable& table, const std::string& source)
{
    if (table.times.size() < 2)
        return 300;
    auto step = (table.times[1] - table.times[0]).count();
    if (step <= 0)
        throw SchemaError(fmt::format("{}:{}: timestamps must increase", source, table.lines[1]));
    for (std::size_t i = 2; i < table.times.size(); ++i) {
        if ((table.times[i] - table.times[i - 1]).count() != step)
            throw SchemaError(fmt::format("{}:{}: non-uniform timestamp step (expected {} s)", source,
                                          table.lines[i], step));
    }
    return step;
}

TimeSeries column_series(const RawTable& table, std::size_t column, Unit unit, const std::string& source,
                         const LoadOptions& options)
{
    TimeSeries s;
    s.start = table.times.front();
    s.step_seconds = uniform_step(table, source);
    s.values = table.columns[column];
    s.unit = unit;
    if (options.fill_missing) {
        s = fill_missing_linear(s);
    } else {
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (std::isnan(s.values[i]))
                throw ParseError(source, table.lines[i], "missing value (enable fill_missing to interpolate)");
    }
    check_values(s, source);
    return s;
}

void check_header(const RawTable& table, const std::vector<std::string_view>& expected, const std::string& source)
{
    bool ok = table.header.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i)
        ok = table.header[i] == expected[i];
    if (!ok) {
        std::string want;
        for (auto h : expected)
            want += (want.empty() ? "" : ",") + std::string(h);
        throw SchemaError(fmt::format("{}: header must be '{}'", source, want));
    }
}

} // namespace

std::string_view unit_name(Unit unit)
{
    switch (unit) {
    case Unit::usd_per_mwh:
        return "USD/MWh";
    case Unit::t_per_mwh:
        return "tCO2/MWh";
    case Unit::capacity_factor:
        return "capacity factor";
    case Unit::celsius:
        return "degC";
    case Unit::rh_fraction:
        return "RH fraction";
    }
    return "?";
}

Unit unit_of(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::price:
        return Unit::usd_per_mwh;
    case SeriesKind::solar:
        return Unit::capacity_factor;
    case SeriesKind::carbon_intensity:
        return Unit::t_per_mwh;
    case SeriesKind::ambient_temperature:
        return Unit::celsius;
    case SeriesKind::ambient_humidity:
        return Unit::rh_fraction;
    }
    return Unit::usd_per_mwh;
}

TimePoint parse_timestamp(std::string_view text)
{
    // YYYY-MM-DD[T| ]HH:MM[:SS][Z]
    int y, mo, d, h = 0, mi = 0, sec = 0;
    auto bad = [&] { return ValidationError(fmt::format("bad timestamp '{}'", text)); };
    if (!text.empty() && text.back() == 'Z')
        text.remove_suffix(1);
    if (text.size() < 10 || text[4] != '-' || text[7] != '-')
        throw bad();
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) || !parse_int(text.substr(8, 2), d))
        throw bad();
    if (text.size() > 10) {
        if ((text[10] != 'T' && text[10] != ' ') || text.size() < 16 || text[13] != ':')
            throw bad();
        if (!parse_int(text.substr(11, 2), h) || !parse_int(text.substr(14, 2), mi))
            throw bad();
        if (text.size() > 16) {
            if (text.size() != 19 || text[16] != ':' || !parse_int(text.substr(17, 2), sec))
                throw bad();
        }
    }
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 60)
        throw bad();
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

std::string format_timestamp(TimePoint t)
{
    using namespace std::chrono;
    auto day_point = floor<days>(t);
    year_month_day ymd{day_point};
    hh_mm_ss hms{t - day_point};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

TimeSeries load_series(const std::filesystem::path& path, SeriesKind kind, const LoadOptions& options)
{
    const auto layout = layout_of(kind);
    const auto table = read_table(path);
    check_header(table, layout.header, path.string());
    return column_series(table, layout.column - 1, unit_of(kind), path.string(), options);
}

AmbientSeries load_ambient(const std::filesystem::path& path, const LoadOptions& options)
{
    const auto table = read_table(path);
    check_header(table, layout_of(SeriesKind::ambient_temperature).header, path.string());
    return {column_series(table, 0, Unit::celsius, path.string(), options),
            column_series(table, 1, Unit::rh_fraction, path.string(), options)};
}

void write_series(const std::filesystem::path& path, const TimeSeries& series, SeriesKind kind)
{
    if (kind == SeriesKind::ambient_temperature || kind == SeriesKind::ambient_humidity)
        throw ArgumentError("ambient series are written as a pair; use a two-column writer");
    const auto layout = layout_of(kind);
    std::string out = fmt::format("{},{}\n", layout.header[0], layout.header[1]);
    out.reserve(series.size() * 32);
    for (std::size_t i = 0; i < series.size(); ++i)
        out += fmt::format("{},{}\n", format_timestamp(series.time_at(i)), series.values[i]);
    detail::write_text(path, out);
}

FuelMixTable load_fuel_mix(const std::filesystem::path& csv_path, const std::filesystem::path& factors_path)
{
    const auto table = read_table(csv_path);
    FuelMixTable mix;
    mix.start = table.times.front();
    mix.step_seconds = uniform_step(table, csv_path.string());
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        std::string name = table.header[c];
        if (name.size() > 3 && name.ends_with("_mw"))
            name.resize(name.size() - 3);
        mix.fuels.push_back(name);
        mix.generation_mw.push_back(table.columns[c - 1]);
    }

    nlohmann::json factors;
    try {
        factors = nlohmann::json::parse(detail::read_text(factors_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(fmt::format("{}: {}", factors_path.string(), e.what()));
    }
    if (!factors.is_object())
        throw SchemaError(fmt::format("{}: expected an object of fuel -> tCO2/MWh", factors_path.string()));
    for (auto& [fuel, value] : factors.items()) {
        if (!value.is_number())
            throw SchemaError(fmt::format("{}: factor for '{}' is not a number", factors_path.string(), fuel));
        mix.emission_factors[fuel] = value.get<double>();
    }
    validate(mix);
    return mix;
}

void validate(const FuelMixTable& mix)
{
    if (mix.fuels.size() != mix.generation_mw.size())
        throw SchemaError("fuel mix: fuel names and generation columns differ in count");
    for (std::size_t f = 0; f < mix.fuels.size(); ++f) {
        auto ef = mix.emission_factors.find(mix.fuels[f]);
        if (ef == mix.emission_factors.end())
            throw SchemaError(fmt::format("fuel mix: no emission factor for '{}'", mix.fuels[f]));
        if (!(ef->second >= 0.0) || !std::isfinite(ef->second))
            throw SchemaError(fmt::format("fuel mix: emission factor for '{}' must be finite and >= 0", mix.fuels[f]));
        if (mix.generation_mw[f].size() != mix.steps())
            throw SchemaError("fuel mix: generation columns differ in length");
        for (std::size_t t = 0; t < mix.generation_mw[f].size(); ++t) {
            double g = mix.generation_mw[f][t];
            if (!(g >= 0.0) || !std::isfinite(g))
                throw DataError(fmt::format("fuel mix: generation for '{}' at step {} must be finite and >= 0",
                                            mix.fuels[f], t));
        }
    }
}

TimeSeries carbon_intensity(const FuelMixTable& mix)
{
    validate(mix);
    const auto n = mix.steps();
    TimeSeries out;
    out.start = mix.start;
    out.step_seconds = mix.step_seconds;
    out.unit = Unit::t_per_mwh;
    out.values.assign(n, 0.0);

    std::vector<double> factors;
    for (const auto& f : mix.fuels)
        factors.push_back(mix.emission_factors.at(f));
    for (std::size_t t = 0; t < n; ++t) {
        double emitted = 0.0;
        double demand = 0.0;
        for (std::size_t f = 0; f < mix.fuels.size(); ++f) {
            emitted += mix.generation_mw[f][t] * factors[f];
            demand += mix.generation_mw[f][t];
        }
        if (demand <= 0.0) {
            auto when = out.start + std::chrono::seconds(out.step_seconds * static_cast<std::int64_t>(t));
            throw DataError(fmt::format("fuel mix: zero total demand at {}", format_timestamp(when)));
        }
        out.values[t] = emitted / demand;
    }
    return out;
}

TimeSeries resample_repeat(const TimeSeries& s, std::int64_t factor)
{
    if (factor < 1)
        throw ArgumentError(fmt::format("resample factor must be >= 1, got {}", factor));
    if (s.step_seconds % factor != 0)
        throw ArgumentError(fmt::format("step of {} s is not divisible by {}", s.step_seconds, factor));
    TimeSeries out;
    out.start = s.start;
    out.step_seconds = s.step_seconds / factor;
    out.unit = s.unit;
    out.values.reserve(s.size() * static_cast<std::size_t>(factor));
    for (double v : s.values)
        out.values.insert(out.values.end(), static_cast<std::size_t>(factor), v);
    return out;
}

TimeSeries fill_missing_linear(const TimeSeries& s)
{
    TimeSeries out = s;
    auto& v = out.values;
    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::isfinite(v[i]))
            valid.push_back(i);
    if (valid.empty())
        throw DataError("series has no valid values to fill from");
    if (valid.size() == v.size())
        return out;

    for (std::size_t i = 0; i < valid.front(); ++i)
        v[i] = v[valid.front()];
    for (std::size_t i = valid.back() + 1; i < v.size(); ++i)
        v[i] = v[valid.back()];
    for (std::size_t k = 0; k + 1 < valid.size(); ++k) {
        const auto a = valid[k];
        const auto b = valid[k + 1];
        for (auto i = a + 1; i < b; ++i) {
            const double w = static_cast<double>(i - a) / static_cast<double>(b - a);
            v[i] = v[a] + w * (v[b] - v[a]);
        }
    }
    return out;
}

TimeSeries align_to_step(const TimeSeries& s, std::int64_t master_step_seconds)
{
    if (master_step_seconds <= 0)
        throw ArgumentError("master step must be positive");
    if (s.step_seconds == master_step_seconds)
        return s;
    if (s.step_seconds < master_step_seconds || s.step_seconds % master_step_seconds != 0)
        throw SchemaError(fmt::format("series step {} s cannot be repeated onto a {} s grid", s.step_seconds,
                                      master_step_seconds));
    return resample_repeat(s, s.step_seconds / master_step_seconds);
}

void check_values(const TimeSeries& s, std::string_view name)
{
    if (s.values.empty())
        throw SchemaError(fmt::format("{}: series is empty", name));
    if (s.step_seconds <= 0)
        throw SchemaError(fmt::format("{}: step must be positive", name));
    const bool fraction = s.unit == Unit::capacity_factor || s.unit == Unit::rh_fraction;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double v = s.values[i];
        if (!std::isfinite(v))
            throw DataError(fmt::format("{}: non-finite value at step {}", name, i));
        if (fraction && (v < 0.0 || v > 1.0))
            throw DataError(fmt::format("{}: value {} at step {} is outside [0, 1]", name, v, i));
    }
}

LocationGrid load_grid_manifest(const std::filesystem::path& path)
{
    detail::LineReader reader(path);
    const auto source = path.string();
    const auto base = path.parent_path();
    std::string_view line;
    if (!reader.next(line))
        throw SchemaError(fmt::format("{}: empty manifest", source));
    std::vector<std::string_view> cells;
    detail::split(line, cells);
    const std::vector<std::string_view> expected{"lat", "lon", "solar_path", "ambient_path", "is_land"};
    if (cells != expected)
        throw SchemaError(fmt::format("{}: header must be 'lat,lon,solar_path,ambient_path,is_land'", source));

    LocationGrid grid;
    while (reader.next(line)) {
        detail::split(line, cells);
        if (cells.size() != 5)
            throw ParseError(source, reader.line_number(), "expected 5 columns");
        Location loc;
        double land;
        if (!detail::parse_cell(cells[0], loc.lat) || !detail::parse_cell(cells[1], loc.lon) ||
            !detail::parse_cell(cells[4], land) || std::isnan(loc.lat) || std::isnan(loc.lon) || std::isnan(land))
            throw ParseError(source, reader.line_number(), "bad numeric field");
        if (loc.lat < -90.0 || loc.lat > 90.0 || loc.lon < -180.0 || loc.lon > 180.0)
            throw ParseError(source, reader.line_number(), "coordinates out of range");
        loc.is_land = land != 0.0;
        auto resolve = [&](std::string_view p) {
            std::filesystem::path fp{std::string(p)};
            return fp.is_absolute() || fp.empty() ? fp : base / fp;
        };
        loc.solar_path = resolve(cells[2]);
        loc.ambient_path = resolve(cells[3]);
        grid.points.push_back(std::move(loc));
    }
    return grid;
}

LocationGrid apply_masks(const LocationGrid& grid, double cf_threshold)
{
    LocationGrid out;
    for (const auto& p : grid.points) {
        if (!p.is_land)
            continue;
        auto cf = p.cf_mean;
        if (!cf) {
            try {
                const auto s = load_series(p.solar_path, SeriesKind::solar, {.fill_missing = true});
                double sum = 0.0;
                for (double v : s.values)
                    sum += v;
                cf = sum / static_cast<double>(s.size());
            } catch (const Error&) {
                continue;
            }
        }
        if (*cf > cf_threshold) {
            Location kept = p;
            kept.cf_mean = cf;
            out.points.push_back(std::move(kept));
        }
    }
    return out;
}

} // namespace heliodac

// SPDX-License-Identifier: Apache-2.0
//
// hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
// Copyright (C) 2026 hydrolink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace hlcli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Cuts a trailing # comment that is not inside a string.
std::string_view strip_comment(std::string_view s)
{
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quote) {
            if (c == '\\' && quote == '"')
                ++i;
            else if (c == quote)
                quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return s.substr(0, i);
        }
    }
    return s;
}

bool bare_key(std::string_view k)
{
    return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

struct Number {
    bool integral;
    std::int64_t i;
    double d;
};

Number parse_number(std::string_view raw)
{
    std::string s;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '_') {
            if (i == 0 || i + 1 == raw.size() || !std::isdigit(static_cast<unsigned char>(raw[i - 1])) ||
                !std::isdigit(static_cast<unsigned char>(raw[i + 1])))
                throw std::invalid_argument("misplaced '_' in number '" + std::string(raw) + "'");
            continue;
        }
        s.push_back(raw[i]);
    }
    std::string_view body = s;
    if (body == "inf" || body == "+inf")
        return {false, 0, kInf};
    if (body == "-inf")
        return {false, 0, -kInf};
    if (body == "nan" || body == "+nan" || body == "-nan")
        return {false, 0, std::numeric_limits<double>::quiet_NaN()};
    if (!body.empty() && body.front() == '+')
        body.remove_prefix(1);
    if (body.empty())
        throw std::invalid_argument("empty value");
    const bool is_float = body.find_first_of(".eE") != std::string_view::npos;
    if (!is_float) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec == std::errc::result_out_of_range)
            throw std::invalid_argument("integer out of range: " + std::string(raw));
        if (ec != std::errc() || p != body.data() + body.size())
            throw std::invalid_argument("not a value: '" + std::string(raw) + "'");
        return {true, v, static_cast<double>(v)};
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || p != body.data() + body.size())
        throw std::invalid_argument("not a value: '" + std::string(raw) + "'");
    return {false, 0, v};
}

std::string parse_string(std::string_view s)
{
    const char q = s.front();
    if (s.size() < 2 || s.back() != q)
        throw std::invalid_argument("unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == q)
            throw std::invalid_argument("unexpected quote inside string");
        if (c == '\\' && q == '"') {
            if (i + 2 >= s.size())
                throw std::invalid_argument("dangling escape in string");
            switch (s[++i]) {
            case '"': c = '"'; break;
            case '\\': c = '\\'; break;
            case 'n': c = '\n'; break;
            case 't': c = '\t'; break;
            default: throw std::invalid_argument(std::string("unsupported escape \\") + s[i]);
            }
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", source, line, message) : fmt::format("{}: {}", source, message)),
      message_(message)
{
}

Value parse_value(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.empty())
        throw std::invalid_argument("missing value");
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    if (s.front() == '"' || s.front() == '\'')
        return parse_string(s);
    if (s.front() == '[') {
        if (s.back() != ']')
            throw std::invalid_argument("unterminated array");
        std::vector<double> out;
        std::string_view body = trim(s.substr(1, s.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            const std::string_view item = trim(body.substr(0, comma));
            if (item.empty())
                throw std::invalid_argument("empty array element");
            if (item.front() == '"' || item.front() == '\'' || item.front() == '[' || item == "true" || item == "false")
                throw std::invalid_argument("arrays may only hold numbers");
            out.push_back(parse_number(item).d);
            if (comma == std::string_view::npos)
                break;
            body = trim(body.substr(comma + 1));  // a trailing comma is allowed
        }
        return out;
    }
    const Number n = parse_number(s);
    if (n.integral)
        return n.i;
    return n.d;
}

Document parse_toml(std::string_view text, const std::string& source)
{
    Document doc;
    doc.source = source;
    std::string block;
    int line_no = 0;
    std::size_t pos = 0;

    auto next_line = [&](std::string_view& out) {
        if (pos >= text.size())
            return false;
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        out = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        return true;
    };

    std::string_view raw;
    while (next_line(raw)) {
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.size() > 1 && line[1] == '[')
                throw ConfigError(source, line_no, "arrays of tables are not supported");
            if (line.back() != ']')
                throw ConfigError(source, line_no, "malformed block header");
            const std::string_view name = trim(line.substr(1, line.size() - 2));
            if (!bare_key(name))
                throw ConfigError(source, line_no, fmt::format("invalid block name '{}'", name));
            if (doc.blocks.count(std::string(name)))
                throw ConfigError(source, line_no,
                                  fmt::format("duplicate block [{}] (first at line {})", name, doc.blocks[std::string(name)]));
            block = name;
            doc.blocks[block] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source, line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        if (!bare_key(key))
            throw ConfigError(source, line_no, fmt::format("invalid key '{}'", key));
        std::string value_text(trim(line.substr(eq + 1)));
        const int key_line = line_no;
        if (!value_text.empty() && value_text.front() == '[') {
            // multi-line array
            while (value_text.find(']') == std::string::npos) {
                std::string_view more;
                if (!next_line(more))
                    throw ConfigError(source, key_line, "unterminated array");
                value_text += ' ';
                value_text += trim(strip_comment(more));
            }
        }
        const std::string full = block.empty() ? std::string(key) : block + "." + std::string(key);
        if (auto it = doc.entries.find(full); it != doc.entries.end())
            throw ConfigError(source, key_line, fmt::format("duplicate key '{}' (first at line {})", full, it->second.line));
        try {
            doc.entries[full] = {parse_value(value_text), key_line};
        } catch (const std::invalid_argument& e) {
            throw ConfigError(source, key_line, fmt::format("{}: {}", full, e.what()));
        }
    }
    return doc;
}

std::string Field::name() const
{
    return block.empty() ? std::string(key) : fmt::format("{}.{}", block, key);
}

const std::vector<Field>& schema()
{
    using L = std::vector<double>;
    static const std::vector<Field> fields = {
        {"", "seed", Kind::integer, std::int64_t{1}, 0, 9.2e18, false, "global seed"},
        {"", "out_dir", Kind::text, std::string("out"), 0, 0, false, "output directory"},

        {"environment", "spreading_k", Kind::real, 1.5, 1.0, 2.0, false, "geometric spreading exponent"},
        {"environment", "shipping_s", Kind::real, 0.5, 0.0, 1.0, false, "shipping activity"},
        {"environment", "wind_w", Kind::real, 0.0, 0.0, 100.0, false, "wind speed, m/s"},

        {"grid", "f_min_khz", Kind::real, 0.1, 0.0, 1000.0, true, "lowest grid frequency"},
        {"grid", "f_max_khz", Kind::real, 200.0, 0.0, 1000.0, true, "highest grid frequency"},
        {"grid", "step_khz", Kind::real, 0.1, 0.0, 100.0, true, "grid step"},

        {"link", "distances_km", Kind::real_list, L{1, 2, 5, 10, 20, 50, 100}, 0.001, 1e4, false, "link distances"},
        {"link", "snr_db", Kind::real, 20.0, -50.0, 100.0, false, "target SNR"},
        {"link", "efficiency", Kind::real, 1.0, 0.0, 1.0, true, "electroacoustic efficiency"},

        {"chain", "distances_km", Kind::real_list, L{1, 10, 50, 100}, 0.001, 1e4, false, "end-to-end distances"},
        {"chain", "n_max", Kind::integer, std::int64_t{10}, 0, 1000, false, "largest relay count"},
        {"chain", "packet_bits", Kind::real, 1e4, 0.0, 1e12, true, "packet length, bits"},
        {"chain", "snr_db", Kind::real, 10.0, -50.0, 100.0, false, "per-hop target SNR"},
        {"chain", "rx_power_w", Kind::real, 2.0, 0.0, 1e4, false, "receiver power draw"},
        {"chain", "sound_speed_mps", Kind::real, 1500.0, 1000.0, 2000.0, false, "sound speed"},
        {"chain", "efficiency", Kind::real, 1.0, 0.0, 1.0, true, "electroacoustic efficiency"},
        {"chain", "threshold_lo_km", Kind::real, 1.0, 0.001, 1e4, false, "relaying threshold bracket, low end"},
        {"chain", "threshold_hi_km", Kind::real, 100.0, 0.001, 1e4, false, "relaying threshold bracket, high end"},

        {"cs", "n", Kind::integer, std::int64_t{64}, 1, 4096, false, "channel length"},
        {"cs", "s", Kind::integer, std::int64_t{3}, 0, 4096, false, "non-zero taps"},
        {"cs", "m_list", Kind::integer_list, L{4, 8, 12, 16, 20, 24, 28, 32, 40, 48, 64}, 0, 4096, false, "pilot counts"},
        {"cs", "trials", Kind::integer, std::int64_t{500}, 1, 1e7, false, "trials per pilot count"},
        {"cs", "noise_std", Kind::real, 0.0, 0.0, 10.0, false, "measurement noise std"},
        {"cs", "decay_taps", Kind::real, 16.0, 0.0, 1e6, true, "amplitude decay constant, taps"},
        {"cs", "pilots", Kind::text, std::string("gaussian"), 0, 0, false, "pilot scheme",
         {"gaussian", "partial_fourier", "identity"}},

        {"dfe", "n_ff", Kind::integer, std::int64_t{16}, 1, 1024, false, "feed-forward taps"},
        {"dfe", "n_fb", Kind::integer, std::int64_t{30}, 0, 1024, false, "feedback taps"},
        {"dfe", "mu", Kind::real, 0.01, 0.0, 1.0, true, "LMS step size, below 1"},
        {"dfe", "channel_length", Kind::integer, std::int64_t{30}, 1, 4096, false, "channel length"},
        {"dfe", "sparse_taps", Kind::integer, std::int64_t{3}, 1, 4096, false, "non-zero channel taps"},
        {"dfe", "decay_taps", Kind::real, 10.0, 0.0, 1e6, true, "amplitude decay constant, taps"},
        {"dfe", "snr_db", Kind::real, 15.0, -50.0, 100.0, false, "SNR for the MSE comparison"},
        {"dfe", "pilots", Kind::integer, std::int64_t{15}, 1, 4096, false, "pilot count for the estimate"},
        {"dfe", "n_train", Kind::integer, std::int64_t{3000}, 100, 1e8, false, "training symbols"},
        {"dfe", "n_data", Kind::integer, std::int64_t{1000}, 1000, 1e9, false, "scored symbols"},
        {"dfe", "runs", Kind::integer, std::int64_t{20}, 1, 1e5, false, "seeded channels"},
        {"dfe", "mse_threshold", Kind::real, 0.05, 0.0, 10.0, true, "convergence MSE"},
        {"dfe", "mse_window", Kind::integer, std::int64_t{100}, 1, 1e6, false, "convergence averaging window"},
        {"dfe", "mse_block", Kind::integer, std::int64_t{10}, 1, 1e6, false, "symbols per MSE curve point"},
        {"dfe", "ber_snr_db", Kind::real_list, L{0, 2, 4, 6, 8, 10, 12, 14, 16}, -50.0, 100.0, false, "BER sweep"},

        {"detector", "nu_list", Kind::real_list, L{0.5, 1, 5}, 0.0, kInf, true, "K shape parameters, inf = homogeneous"},
        {"detector", "pfa", Kind::real, 1e-3, 0.0, 0.5, true, "design false alarm rate"},
        {"detector", "scr_db", Kind::real_list, L{-10, -5, 0, 5, 10}, -100.0, 100.0, false, "SCR sweep"},
        {"detector", "trials", Kind::integer, std::int64_t{10000}, 1000, 1e9, false, "frames per ROC point"},
        {"detector", "cells", Kind::integer, std::int64_t{14}, 3, 4096, false, "range cells"},
        {"detector", "pulses", Kind::integer, std::int64_t{64}, 1, 1e8, false, "pulses per frame"},
        {"detector", "cut", Kind::integer, std::int64_t{7}, 0, 4095, false, "cell under test"},
        {"detector", "guard_cells", Kind::integer, std::int64_t{1}, 0, 100, false, "guard cells per side"},
        {"detector", "reference_cells", Kind::integer, std::int64_t{8}, 1, 4096, false, "reference cells"},
        {"detector", "calibration_samples", Kind::integer, std::int64_t{0}, 0, 1e10, false,
         "clutter samples for the threshold, 0 = ceil(1000 / pfa)"},
    };
    return fields;
}

const std::vector<std::string_view>& required_blocks()
{
    static const std::vector<std::string_view> blocks = {"environment", "chain", "cs", "dfe", "detector"};
    return blocks;
}

std::string format_value(const Value& v)
{
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return fmt::format("{}", i); }
        std::string operator()(double d) const { return fmt::format("{}", d); }
        std::string operator()(const std::string& s) const { return fmt::format("\"{}\"", s); }
        std::string operator()(const std::vector<double>& l) const { return fmt::format("[{}]", fmt::join(l, ", ")); }
    };
    return std::visit(Visitor{}, v);
}

const Value& ScenarioConfig::at(std::string_view name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        throw std::logic_error(fmt::format("no config field '{}'", name));
    return it->second;
}

double ScenarioConfig::real(std::string_view name) const
{
    return std::get<double>(at(name));
}

std::int64_t ScenarioConfig::integer(std::string_view name) const
{
    return std::get<std::int64_t>(at(name));
}

const std::string& ScenarioConfig::text(std::string_view name) const
{
    return std::get<std::string>(at(name));
}

std::vector<double> ScenarioConfig::reals(std::string_view name) const
{
    return std::get<std::vector<double>>(at(name));
}

bool ScenarioConfig::is_defaulted(std::string_view name) const
{
    const std::string prefix = std::string(name) + " = ";
    return std::any_of(defaulted_.begin(), defaulted_.end(), [&](const std::string& d) { return d.rfind(prefix, 0) == 0; });
}

std::string ScenarioConfig::canonical() const
{
    std::string out;
    for (const auto& [name, value] : values_) {
        if (name == "out_dir")
            continue;
        if (!out.empty())
            out += ';';
        out += name + "=" + format_value(value);
    }
    return out;
}

std::uint64_t ScenarioConfig::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Override parse_override(std::string_view arg)
{
    const auto eq = arg.find('=');
    if (eq == std::string_view::npos || trim(arg.substr(0, eq)).empty())
        throw std::invalid_argument(fmt::format("--set expects key=value, got '{}'", arg));
    return {std::string(trim(arg.substr(0, eq))), std::string(trim(arg.substr(eq + 1)))};
}

namespace {

const Field* find_field(std::string_view name)
{
    for (const auto& f : schema())
        if (f.name() == name)
            return &f;
    return nullptr;
}

std::string range_text(const Field& f)
{
    return fmt::format("{}{}, {}]", f.lo_open ? "(" : "[", f.lo, f.hi);
}

bool in_range(const Field& f, double v)
{
    if (std::isnan(v))
        return false;
    return (f.lo_open ? v > f.lo : v >= f.lo) && v <= f.hi;
}

// Coerces a parsed value to the field's kind; returns an error message or "".
std::string coerce(const Field& f, Value& v)
{
    switch (f.kind) {
    case Kind::real:
        if (auto* i = std::get_if<std::int64_t>(&v))
            v = static_cast<double>(*i);
        if (!std::holds_alternative<double>(v))
            return "expected a number";
        if (!in_range(f, std::get<double>(v)))
            return fmt::format("value {} outside {}", format_value(v), range_text(f));
        return {};
    case Kind::integer:
        if (!std::holds_alternative<std::int64_t>(v))
            return "expected an integer";
        if (!in_range(f, static_cast<double>(std::get<std::int64_t>(v))))
            return fmt::format("value {} outside {}", format_value(v), range_text(f));
        return {};
    case Kind::boolean:
        return std::holds_alternative<bool>(v) ? "" : "expected true or false";
    case Kind::text: {
        if (!std::holds_alternative<std::string>(v))
            return "expected a string";
        const auto& s = std::get<std::string>(v);
        if (!f.choices.empty() && std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
            std::vector<std::string> names(f.choices.begin(), f.choices.end());
            return fmt::format("'{}' is not one of {}", s, fmt::join(names, ", "));
        }
        return {};
    }
    case Kind::real_list:
    case Kind::integer_list: {
        if (!std::holds_alternative<std::vector<double>>(v))
            return "expected an array of numbers";
        const auto& l = std::get<std::vector<double>>(v);
        if (l.empty())
            return "array must not be empty";
        for (double x : l) {
            if (f.kind == Kind::integer_list && (!std::isfinite(x) || x != std::floor(x)))
                return fmt::format("element {} is not an integer", x);
            if (!in_range(f, x))
                return fmt::format("element {} outside {}", x, range_text(f));
        }
        return {};
    }
    }
    return "unsupported field kind";
}

} // namespace

struct Loader {
    static LoadResult run(const Document& doc, const std::vector<Override>& overrides)
    {
        LoadResult res;
        auto& diag = res.diagnostics;
        auto& values = res.config.values_;
        std::map<std::string, std::string> origin;  // name -> location prefix

        std::set<std::string_view> known_blocks;
        for (const auto& f : schema())
            if (!f.block.empty())
                known_blocks.insert(f.block);
        for (const auto& [name, line] : doc.blocks)
            if (!known_blocks.count(name))
                diag.push_back(fmt::format("{}:{}: unknown block [{}]", doc.source, line, name));

        std::vector<std::string> missing;
        for (auto b : required_blocks())
            if (!doc.blocks.count(std::string(b)))
                missing.push_back(fmt::format("[{}]", b));
        if (!missing.empty())
            diag.push_back(fmt::format("{}:1: missing required block{}: {}", doc.source, missing.size() > 1 ? "s" : "",
                                       fmt::join(missing, ", ")));

        for (const auto& [name, entry] : doc.entries) {
            const std::string where = fmt::format("{}:{}", doc.source, entry.line);
            const Field* f = find_field(name);
            if (!f) {
                const auto dot = name.find('.');
                if (dot == std::string::npos || known_blocks.count(std::string_view(name).substr(0, dot)))
                    diag.push_back(fmt::format("{}: unknown key '{}'", where, name));
                continue;  // keys of unknown blocks are covered by the block diagnostic
            }
            Value v = entry.value;
            origin[name] = where;
            if (auto err = coerce(*f, v); !err.empty()) {
                diag.push_back(fmt::format("{}: {}: {}", where, name, err));
                continue;
            }
            values[name] = std::move(v);
        }

        for (const auto& o : overrides) {
            const std::string where = fmt::format("--set {}", o.name);
            const Field* f = find_field(o.name);
            if (!f) {
                diag.push_back(fmt::format("{}: unknown key '{}'", where, o.name));
                continue;
            }
            origin[o.name] = where;
            Value v;
            try {
                v = parse_value(o.text);
            } catch (const std::invalid_argument& e) {
                if (f->kind != Kind::text) {
                    diag.push_back(fmt::format("{}: {}", where, e.what()));
                    continue;
                }
                v = o.text;  // bare word for a string field
            }
            if (auto err = coerce(*f, v); !err.empty()) {
                diag.push_back(fmt::format("{}: {}: {}", where, o.name, err));
                continue;
            }
            values[o.name] = std::move(v);
        }

        for (const auto& f : schema()) {
            const std::string name = f.name();
            if (!origin.count(name)) {
                values[name] = f.fallback;
                res.config.defaulted_.push_back(fmt::format("{} = {}", name, format_value(f.fallback)));
            }
        }

        if (diag.empty())
            cross_checks(res, origin, doc.source);
        return res;
    }

    static void cross_checks(LoadResult& res, const std::map<std::string, std::string>& origin, const std::string& source)
    {
        const auto& c = res.config;
        auto where = [&](const std::string& name) {
            auto it = origin.find(name);
            return it != origin.end() ? it->second : source + " (default)";
        };
        auto fail = [&](const std::string& name, const std::string& msg) {
            res.diagnostics.push_back(fmt::format("{}: {}: {}", where(name), name, msg));
        };

        if (c.real("grid.f_min_khz") >= c.real("grid.f_max_khz"))
            fail("grid.f_max_khz", "must exceed grid.f_min_khz");
        if (c.real("chain.threshold_lo_km") >= c.real("chain.threshold_hi_km"))
            fail("chain.threshold_hi_km", "must exceed chain.threshold_lo_km");
        if (c.integer("cs.s") > c.integer("cs.n"))
            fail("cs.s", "must not exceed cs.n");
        for (double m : c.reals("cs.m_list"))
            if (m > static_cast<double>(c.integer("cs.n"))) {
                fail("cs.m_list", fmt::format("pilot count {} exceeds cs.n", m));
                break;
            }
        if (c.integer("dfe.sparse_taps") > c.integer("dfe.channel_length"))
            fail("dfe.sparse_taps", "must not exceed dfe.channel_length");
        if (c.integer("dfe.pilots") > c.integer("dfe.channel_length"))
            fail("dfe.pilots", "must not exceed dfe.channel_length");
        if (c.real("dfe.mu") >= 1.0)
            fail("dfe.mu", "must be below 1");
        if (c.integer("detector.cut") >= c.integer("detector.cells"))
            fail("detector.cut", "must be below detector.cells");
        if (c.integer("detector.reference_cells") + 2 * c.integer("detector.guard_cells") + 1 >
            c.integer("detector.cells"))
            fail("detector.reference_cells", "reference window does not fit in detector.cells");
    }
};

LoadResult resolve(const Document& doc, const std::vector<Override>& overrides)
{
    return Loader::run(doc, overrides);
}

} // namespace hlcli

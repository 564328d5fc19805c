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

#ifndef HYDROLINK_TOOLS_CONFIG_HPP
#define HYDROLINK_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hlcli {

using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;

/// Error pinned to a source location, printed as "<source>:<line>: <message>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& message);
    const std::string& message() const { return message_; }

private:
    std::string message_;
};

// Subset of TOML: [block] headers, key = value, # comments. Values are
// booleans, integers, floats (incl. inf / nan), basic "strings" and flat
// arrays of numbers.
struct Entry {
    Value value;
    int line = 0;
};

struct Document {
    std::string source;
    std::map<std::string, Entry> entries;  // "block.key", or "key" at top level
    std::map<std::string, int> blocks;     // block name -> header line
};

Document parse_toml(std::string_view text, const std::string& source);
Value parse_value(std::string_view text);

enum class Kind { real, integer, boolean, text, real_list, integer_list };

struct Field {
    std::string_view block;  // "" for top level
    std::string_view key;
    Kind kind;
    Value fallback;
    double lo;
    double hi;
    bool lo_open = false;
    std::string_view doc;
    std::vector<std::string_view> choices = {};

    std::string name() const;
};

const std::vector<Field>& schema();
const std::vector<std::string_view>& required_blocks();

/// Fully resolved scenario: every schema field present, either from the file,
/// an override, or its default.
class ScenarioConfig {
public:
    double real(std::string_view name) const;
    std::int64_t integer(std::string_view name) const;
    const std::string& text(std::string_view name) const;
    std::vector<double> reals(std::string_view name) const;

    std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }
    /// Sorted key=value list of every field except out_dir, joined by ';'.
    std::string canonical() const;
    std::uint64_t hash() const;

    /// "name = value" for every field that took its default.
    const std::vector<std::string>& defaulted() const { return defaulted_; }
    bool is_defaulted(std::string_view name) const;

private:
    friend struct Loader;
    const Value& at(std::string_view name) const;

    std::map<std::string, Value, std::less<>> values_;
    std::vector<std::string> defaulted_;
};

struct Override {
    std::string name;
    std::string text;
};

Override parse_override(std::string_view arg);

struct LoadResult {
    ScenarioConfig config;
    std::vector<std::string> diagnostics;  // empty when valid
};

/// Schema check of a parsed document plus overrides. Never throws for invalid
/// content; every problem becomes one diagnostic line.
LoadResult resolve(const Document& doc, const std::vector<Override>& overrides);

std::string format_value(const Value& v);

} // namespace hlcli

#endif

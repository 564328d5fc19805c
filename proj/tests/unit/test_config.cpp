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
#include "csv.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

using namespace hlcli;

namespace {

const char* kMinimal = R"(
[environment]
[chain]
[cs]
[dfe]
[detector]
)";

LoadResult load(const std::string& text, const std::vector<Override>& overrides = {})
{
    return resolve(parse_toml(text, "test.toml"), overrides);
}

} // namespace

TEST_CASE("values")
{
    CHECK(std::get<bool>(parse_value("true")));
    CHECK(std::get<std::int64_t>(parse_value("42")) == 42);
    CHECK(std::get<std::int64_t>(parse_value("1_000")) == 1000);
    CHECK(std::get<double>(parse_value("1e4")) == 1e4);
    CHECK(std::get<double>(parse_value("-0.5")) == -0.5);
    CHECK(std::isinf(std::get<double>(parse_value("inf"))));
    CHECK(std::get<std::string>(parse_value(R"("a\"b")")) == "a\"b");
    CHECK(std::get<std::string>(parse_value("'raw\\n'")) == "raw\\n");
    CHECK(std::get<std::vector<double>>(parse_value("[1, 2.5, inf,]")).size() == 3);
    CHECK_THROWS(parse_value("1.2.3"));
    CHECK_THROWS(parse_value("\"open"));
    CHECK_THROWS(parse_value("[\"a\"]"));
    CHECK_THROWS(parse_value(""));
}

TEST_CASE("documents")
{
    const Document d = parse_toml("seed = 3 # trailing\n[chain]\nn_max = 5\ndistances_km = [\n  1,\n  2, # two\n]\n", "x");
    CHECK(std::get<std::int64_t>(d.entries.at("seed").value) == 3);
    CHECK(d.entries.at("chain.n_max").line == 3);
    CHECK(std::get<std::vector<double>>(d.entries.at("chain.distances_km").value).size() == 2);
    CHECK(d.blocks.at("chain") == 2);
}

TEST_CASE("syntax errors carry the line")
{
    CHECK_THROWS_WITH(parse_toml("[chain]\nn_max 5\n", "f.toml"), "f.toml:2: expected 'key = value'");
    CHECK_THROWS_WITH(parse_toml("[chain]\nn_max = 5\nn_max = 6\n", "f.toml"),
                      "f.toml:3: duplicate key 'chain.n_max' (first at line 2)");
    CHECK_THROWS_WITH(parse_toml("\n\n[chain\n", "f.toml"), "f.toml:3: malformed block header");
    CHECK_THROWS_WITH(parse_toml("[a]\n[a]\n", "f.toml"), "f.toml:2: duplicate block [a] (first at line 1)");
    CHECK_THROWS_WITH(parse_toml("x = [1,\n2\n", "f.toml"), "f.toml:1: unterminated array");
}

TEST_CASE("empty file lists the required blocks")
{
    const LoadResult r = load("");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0] == "test.toml:1: missing required blocks: [environment], [chain], [cs], [dfe], [detector]");
}

TEST_CASE("minimal file is valid and every field is defaulted")
{
    const LoadResult r = load(kMinimal);
    CHECK(r.diagnostics.empty());
    CHECK(r.config.defaulted().size() == schema().size());
    CHECK(r.config.integer("chain.n_max") == 10);
    CHECK(r.config.real("chain.packet_bits") == 1e4);
    CHECK(r.config.text("cs.pilots") == "gaussian");
    CHECK(r.config.seed() == 1);
}

TEST_CASE("range errors name the field and line")
{
    const LoadResult r = load(std::string(kMinimal) + "\n[grid]\nstep_khz = 0\n" +
                              "");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0] == "test.toml:9: grid.step_khz: value 0 outside (0, 100]");

    const LoadResult s = load("[environment]\nshipping_s = 1.5\n[chain]\n[cs]\n[dfe]\n[detector]\n");
    REQUIRE(s.diagnostics.size() == 1);
    CHECK(s.diagnostics[0] == "test.toml:2: environment.shipping_s: value 1.5 outside [0, 1]");
}

TEST_CASE("unknown keys and blocks are rejected")
{
    const LoadResult r = load(std::string(kMinimal) + "[chain2]\nx = 1\n");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0] == "test.toml:7: unknown block [chain2]");

    const LoadResult s = load("[environment]\nshiping_s = 0.2\n[chain]\n[cs]\n[dfe]\n[detector]\n");
    REQUIRE(s.diagnostics.size() == 1);
    CHECK(s.diagnostics[0] == "test.toml:2: unknown key 'environment.shiping_s'");
}

TEST_CASE("type errors")
{
    const LoadResult r = load(std::string(kMinimal) + "[link]\nsnr_db = \"loud\"\n");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0] == "test.toml:8: link.snr_db: expected a number");
    const LoadResult s = load("[environment]\n[chain]\nn_max = 2.5\n[cs]\n[dfe]\n[detector]\n");
    REQUIRE(s.diagnostics.size() == 1);
    CHECK(s.diagnostics[0] == "test.toml:3: chain.n_max: expected an integer");
    const LoadResult t = load("[environment]\n[chain]\n[cs]\nm_list = [4, 8.5]\n[dfe]\n[detector]\n");
    REQUIRE(t.diagnostics.size() == 1);
    CHECK(t.diagnostics[0] == "test.toml:4: cs.m_list: element 8.5 is not an integer");
}

TEST_CASE("cross-field checks")
{
    const LoadResult r = load("[environment]\n[chain]\n[cs]\nn = 16\ns = 20\n[dfe]\n[detector]\n");
    REQUIRE(r.diagnostics.size() >= 1);
    CHECK(r.diagnostics[0] == "test.toml:5: cs.s: must not exceed cs.n");
}

TEST_CASE("overrides apply, validate and round-trip into the canonical text")
{
    const LoadResult r = load(kMinimal, {parse_override("chain.n_max=5"), parse_override("cs.pilots=identity")});
    CHECK(r.diagnostics.empty());
    CHECK(r.config.integer("chain.n_max") == 5);
    CHECK(r.config.text("cs.pilots") == "identity");
    CHECK_FALSE(r.config.is_defaulted("chain.n_max"));
    CHECK(r.config.canonical().find("chain.n_max=5;") != std::string::npos);

    const LoadResult base = load(kMinimal);
    CHECK(base.config.hash() != r.config.hash());

    const LoadResult bad = load(kMinimal, {parse_override("environment.shipping_s=1.5")});
    REQUIRE(bad.diagnostics.size() == 1);
    CHECK(bad.diagnostics[0] == "--set environment.shipping_s: environment.shipping_s: value 1.5 outside [0, 1]");

    const LoadResult unknown = load(kMinimal, {parse_override("chain.bogus=1")});
    REQUIRE(unknown.diagnostics.size() == 1);
    CHECK(unknown.diagnostics[0] == "--set chain.bogus: unknown key 'chain.bogus'");
    CHECK_THROWS(parse_override("noequals"));
}

TEST_CASE("canonical text skips the output directory")
{
    const LoadResult a = load(std::string("out_dir = \"a\"\n") + kMinimal);
    const LoadResult b = load(std::string("out_dir = \"b\"\n") + kMinimal);
    CHECK(a.config.hash() == b.config.hash());
    CHECK(a.config.canonical().find("out_dir") == std::string::npos);
}

TEST_CASE("numbers format shortest round-trip")
{
    CHECK(format_value(0.1) == "0.1");
    CHECK(format_value(1e4) == "10000");
    CHECK(format_value(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_value(std::vector<double>{1, 0.5}) == "[1, 0.5]");
}

TEST_CASE("csv escaping and layout")
{
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CsvTable t({"a", "b"});
    t.meta("seed", "1");
    t.row({"1", "x,y"});
    CHECK(t.str() == "# seed: 1\r\na,b\r\n1,\"x,y\"\r\n");
    CHECK_THROWS(t.row({"1"}));
}

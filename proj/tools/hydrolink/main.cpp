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

#include "commands.hpp"
#include "config.hpp"

#include <hydrolink/hydrolink.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

namespace {

enum Exit : int {
    kOk = 0,
    kRunFailed = 1,
    kUsage = 2,
    kConfigMissing = 3,
    kConfigInvalid = 4,
};

struct Options {
    std::string config;
    std::optional<std::int64_t> seed;
    std::string out_dir;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Options& o, bool runs)
{
    sub->add_option("-c,--config", o.config, "scenario file (TOML)")->required();
    sub->add_option("--set", o.sets, "override a field, e.g. --set chain.n_max=5 (repeatable)");
    if (runs) {
        sub->add_option("--seed", o.seed, "global seed, overrides the file");
        sub->add_option("-o,--out-dir", o.out_dir, "output directory (else out_dir, then $HYDROLINK_OUT_DIR)");
    }
}

// Returns an exit code on failure, kOk with `out` filled on success.
int load(const Options& o, hlcli::LoadResult& out, bool quiet_diagnostics = false)
{
    std::ifstream f(o.config, std::ios::binary);
    if (!f || std::filesystem::is_directory(o.config)) {
        std::cerr << "hydrolink: cannot read config file '" << o.config << "'\n";
        return kConfigMissing;
    }
    std::stringstream buf;
    buf << f.rdbuf();

    std::vector<hlcli::Override> overrides;
    try {
        for (const auto& s : o.sets)
            overrides.push_back(hlcli::parse_override(s));
        if (o.seed)
            overrides.push_back({"seed", std::to_string(*o.seed)});
        const hlcli::Document doc = hlcli::parse_toml(buf.str(), o.config);
        out = hlcli::resolve(doc, overrides);
    } catch (const hlcli::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kConfigInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hydrolink: " << e.what() << '\n';
        return kConfigInvalid;
    }
    if (!out.diagnostics.empty()) {
        if (!quiet_diagnostics)
            for (const auto& d : out.diagnostics)
                std::cerr << d << '\n';
        return kConfigInvalid;
    }
    return kOk;
}

std::filesystem::path choose_out_dir(const Options& o, const hlcli::ScenarioConfig& c)
{
    if (!o.out_dir.empty())
        return o.out_dir;
    if (!c.is_defaulted("out_dir"))
        return c.text("out_dir");
    if (const char* env = std::getenv("HYDROLINK_OUT_DIR"); env && *env)
        return env;
    return c.text("out_dir");
}

int run_validate(const Options& o)
{
    hlcli::LoadResult res;
    const int rc = load(o, res, true);
    if (rc == kConfigMissing)
        return rc;
    if (rc != kOk && res.diagnostics.empty())
        return rc;  // syntax error, already printed
    std::cout << o.config << ": " << res.diagnostics.size() << " diagnostic" << (res.diagnostics.size() == 1 ? "" : "s")
              << '\n';
    for (const auto& d : res.diagnostics)
        std::cout << "  " << d << '\n';
    if (!res.diagnostics.empty())
        return kConfigInvalid;
    const auto& defaulted = res.config.defaulted();
    std::cout << "defaulted fields: " << defaulted.size() << '\n';
    for (const auto& d : defaulted)
        std::cout << "  " << d << '\n';
    return kOk;
}

int run_command(const hlcli::Command& cmd, const Options& o)
{
    hlcli::LoadResult res;
    if (const int rc = load(o, res); rc != kOk)
        return rc;
    hlcli::RunContext ctx{std::string(cmd.name), res.config, choose_out_dir(o, res.config)};
    try {
        std::filesystem::create_directories(ctx.out_dir);
        std::cout << cmd.name << ": seed " << ctx.config.seed() << ", config "
                  << fmt::format("{:016x}", ctx.config.hash()) << '\n';
        cmd.run(ctx);
    } catch (const std::exception& e) {
        std::cerr << "hydrolink " << cmd.name << ": " << e.what() << '\n';
        return kRunFailed;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hydrolink: underwater link, channel estimation and sea-clutter detection experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hl_version()));
    app.footer(
        "Exit status: 0 success, 1 run failure, 2 usage error, 3 config file unreadable, 4 config invalid.");

    Options opts;
    std::vector<std::pair<CLI::App*, const hlcli::Command*>> subs;
    for (const auto& cmd : hlcli::commands()) {
        auto* sub = app.add_subcommand(std::string(cmd.name), std::string(cmd.summary));
        add_common(sub, opts, true);
        subs.emplace_back(sub, &cmd);
    }
    auto* validate = app.add_subcommand("validate", "check a scenario file without running anything");
    add_common(validate, opts, false);

    if (argc > 1 && argv[1][0] != '-' && std::string_view(argv[1]) != "validate" && !hlcli::find_command(argv[1])) {
        std::cerr << "hydrolink: unknown command '" << argv[1] << "'\n\n" << app.help();
        return kUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "hydrolink: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    if (validate->parsed())
        return run_validate(opts);
    for (const auto& [sub, cmd] : subs)
        if (sub->parsed())
            return run_command(*cmd, opts);
    std::cerr << app.help();
    return kUsage;
}

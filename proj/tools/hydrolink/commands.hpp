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

#ifndef HYDROLINK_TOOLS_COMMANDS_HPP
#define HYDROLINK_TOOLS_COMMANDS_HPP

#include "config.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hlcli {

struct RunContext {
    std::string command;
    ScenarioConfig config;
    std::filesystem::path out_dir;
};

/// A library call failed; carries the status name and message.
class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Command {
    std::string_view name;
    std::string_view summary;
    std::vector<std::filesystem::path> (*run)(const RunContext&);
};

const std::vector<Command>& commands();
const Command* find_command(std::string_view name);

} // namespace hlcli

#endif

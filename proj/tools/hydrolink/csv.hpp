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

#ifndef HYDROLINK_TOOLS_CSV_HPP
#define HYDROLINK_TOOLS_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hlcli {

// RFC 4180 table with leading '#' metadata lines, written in one piece.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void meta(std::string_view key, std::string_view value);
    void row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_; }

    std::string str() const;
    /// Writes to a sibling temp file and renames it into place.
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> meta_;
    std::string body_;
    std::size_t rows_ = 0;
};

std::string csv_escape(std::string_view field);

} // namespace hlcli

#endif

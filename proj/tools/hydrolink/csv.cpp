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

#include "csv.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>

namespace hlcli {

std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string join_line(const std::vector<std::string>& cells)
{
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += csv_escape(cells[i]);
    }
    return line + "\r\n";
}

} // namespace

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::meta(std::string_view key, std::string_view value)
{
    meta_.push_back(fmt::format("# {}: {}\r\n", key, value));
}

void CsvTable::row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size())
        throw std::logic_error(fmt::format("csv row has {} cells, header has {}", cells.size(), columns_.size()));
    body_ += join_line(cells);
    ++rows_;
}

std::string CsvTable::str() const
{
    std::string out;
    for (const auto& m : meta_)
        out += m;
    out += join_line(columns_);
    out += body_;
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const
{
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error(fmt::format("cannot open {} for writing", tmp.string()));
        const std::string text = str();
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.close();
        if (!f)
            throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
    }
    std::filesystem::rename(tmp, path);
}

} // namespace hlcli

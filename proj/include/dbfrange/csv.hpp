// SPDX-License-Identifier: Apache-2.0
//
// dbfrange: maximum communication range analysis for distributed transmit beamforming
// Copyright (C) 2026 The dbfrange Authors
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

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

namespace dbfrange::csv {

// Locale-independent scientific notation with 17 significant digits, so a
// double survives a text round trip. Infinities print as inf / -inf.
inline std::string format_real(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) { return std::to_string(v); }

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    // Cells are preformatted; an empty cell marks a missing value.
    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string str() const
    {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_) append_line(out, r);
        return out;
    }

    void write(const std::filesystem::path& path) const
    {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
        os << str();
    }

private:
    static void append_line(std::string& out, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace dbfrange::csv

/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <concepts>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "mimocache/errors.hpp"

namespace mimocache::harness {

/// Fixed formatting so that equal inputs give byte-identical files.
inline std::string format_cell(double v) { return fmt::format("{:.10g}", v); }
inline std::string format_cell(std::string_view v) { return std::string(v); }
inline std::string format_cell(const char* v) { return std::string(v); }
inline std::string format_cell(const std::string& v) { return v; }
template <std::integral T>
std::string format_cell(T v)
{
    return fmt::format("{}", v);
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
        : path_(path), columns_(header.size()), out_(path, std::ios::binary)
    {
        if (!out_) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        write_line(header);
    }

    template <class... Cells>
    void row(const Cells&... cells)
    {
        if (sizeof...(cells) != columns_) {
            throw DimensionError(fmt::format("{}: row has {} cells, header has {}", path_.string(), sizeof...(cells),
                                             columns_));
        }
        write_line({format_cell(cells)...});
    }

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void write_line(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::filesystem::path path_;
    std::size_t columns_;
    std::ofstream out_;
};

} // namespace mimocache::harness

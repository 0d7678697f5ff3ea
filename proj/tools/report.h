// Copyright 2026 The cohmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular results shared by every subcommand, with CSV and JSON writers.

#ifndef COHMAP_TOOLS_REPORT_H
#define COHMAP_TOOLS_REPORT_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cohmap::cli {

/// Empty cells are written as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

/// %.12g; "nan", "inf" and "-inf" for non-finite values.
std::string format_real(double x);

class Table {
   public:
    explicit Table(std::vector<std::string> columns);

    /// Throws InvariantViolation if the row width differs from the header.
    void add_row(std::vector<Cell> row);

    [[nodiscard]] const std::vector<std::string> &columns() const {
        return columns_;
    }
    [[nodiscard]] const std::vector<std::vector<Cell>> &rows() const {
        return rows_;
    }

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

struct Report {
    std::string command;
    std::optional<std::uint64_t> seed;
    /// Resolved parameters in insertion order.
    std::vector<std::pair<std::string, Cell>> parameters;
    Table table{{}};
    /// Aggregate values; JSON only.
    std::vector<std::pair<std::string, Cell>> summary;
};

enum class Format { kCsv, kJson };

/// Header row, then one line per row in column order.
void write_csv(const Table &table, std::ostream &out);
/// {"command", "seed", "parameters", "columns", "rows", "summary"}; rows are
/// objects keyed by column name.
void write_json(const Report &report, std::ostream &out);
void write_report(const Report &report, Format format, std::ostream &out);

}  // namespace cohmap::cli

#endif  // COHMAP_TOOLS_REPORT_H

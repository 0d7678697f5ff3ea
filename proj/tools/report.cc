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

#include "report.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "cohmap/errors.h"

namespace cohmap::cli {

std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw InvariantViolation("table row has " + std::to_string(row.size()) + " cells, header has " +
                                 std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell &c) {
    struct Visitor {
        std::string operator()(std::monostate) const {
            return "";
        }
        std::string operator()(bool b) const {
            return b ? "true" : "false";
        }
        std::string operator()(std::int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(std::uint64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(double v) const {
            return format_real(v);
        }
        std::string operator()(const std::string &s) const {
            return csv_field(s);
        }
    };
    return std::visit(Visitor{}, c);
}

// Reals are rounded to 12 significant digits; the shortest round-trip
// printer then emits exactly those digits.
nlohmann::ordered_json json_cell(const Cell &c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const {
            return nullptr;
        }
        nlohmann::ordered_json operator()(bool b) const {
            return b;
        }
        nlohmann::ordered_json operator()(std::int64_t v) const {
            return v;
        }
        nlohmann::ordered_json operator()(std::uint64_t v) const {
            return v;
        }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) {
                return nullptr;
            }
            return std::stod(format_real(v));
        }
        nlohmann::ordered_json operator()(const std::string &s) const {
            return s;
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_object(const std::vector<std::pair<std::string, Cell>> &fields) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto &[k, v] : fields) {
        obj[k] = json_cell(v);
    }
    return obj;
}

}  // namespace

void write_csv(const Table &table, std::ostream &out) {
    const auto &cols = table.columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << csv_field(cols[i]);
    }
    out << '\n';
    for (const auto &row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << '\n';
    }
}

void write_json(const Report &report, std::ostream &out) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    doc["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
    doc["parameters"] = json_object(report.parameters);
    doc["columns"] = report.table.columns();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : report.table.rows()) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[report.table.columns()[i]] = json_cell(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    doc["summary"] = json_object(report.summary);
    out << doc.dump(2) << '\n';
}

void write_report(const Report &report, Format format, std::ostream &out) {
    if (format == Format::kCsv) {
        write_csv(report.table, out);
    } else {
        write_json(report, out);
    }
}

}  // namespace cohmap::cli

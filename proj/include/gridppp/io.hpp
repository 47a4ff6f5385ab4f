// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace gridppp {

/// Canonical full-precision (17 significant digits) rendering; CSV output
/// built from this round-trips byte-identically through parse/re-emit.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Homogeneous row table for CLI output.
struct Table {
    using Cell = std::variant<double, long long, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != columns.size())
            throw std::invalid_argument("Table: row width mismatch");
        rows.push_back(std::move(cells));
    }
};

inline std::string cell_to_string(const Table::Cell& c) {
    if (std::holds_alternative<double>(c)) return fmt_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (std::holds_alternative<double>(c))
                obj[t.columns[i]] = std::get<double>(c);
            else if (std::holds_alternative<long long>(c))
                obj[t.columns[i]] = std::get<long long>(c);
            else
                obj[t.columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

/// Parse a CSV produced by to_csv back into a Table (numbers become
/// doubles when they parse exactly, otherwise strings are kept verbatim).
inline Table parse_csv(std::istream& in) {
    Table t;
    std::string line;
    bool header = true;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line);
        if (header) {
            t.columns = fields;
            header = false;
            continue;
        }
        std::vector<Table::Cell> row;
        for (const auto& f : fields) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(f, &pos);
                if (pos == f.size()) {
                    row.emplace_back(v);
                    continue;
                }
            } catch (const std::exception&) {
            }
            row.emplace_back(f);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Parse "start:stop:step" (or a single value) into an inclusive grid.
inline std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> parts;
    std::string cur;
    for (char ch : spec + ":") {
        if (ch == ':') {
            if (cur.empty()) throw std::invalid_argument("parse_range: empty field");
            std::size_t pos = 0;
            parts.push_back(std::stod(cur, &pos));
            if (pos != cur.size())
                throw std::invalid_argument("parse_range: bad number '" + cur + "'");
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3)
        throw std::invalid_argument(
            "parse_range: expected 'value' or 'start:stop:step'");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0)) throw std::invalid_argument("parse_range: step must be > 0");
    if (stop < start)
        throw std::invalid_argument("parse_range: stop must be >= start");
    std::vector<double> grid;
    const double n_exact = (stop - start) / step;
    const long long n = static_cast<long long>(std::floor(n_exact + 1e-9));
    for (long long i = 0; i <= n; ++i) grid.push_back(start + i * step);
    return grid;
}

struct PointsCsv {
    std::vector<std::pair<double, double>> rows;  ///< (col1, col2) per row
    bool is_latlon = false;
};

/// Read a point file: header `x,y` or `lat,lon`, one point per row,
/// `#`-prefixed comment lines ignored. Malformed rows are reported with
/// their line number.
inline PointsCsv read_points_csv(std::istream& in, const std::string& name) {
    PointsCsv out;
    std::string line;
    long lineno = 0;
    bool saw_header = false;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (!saw_header) {
            if (trimmed == "x,y")
                out.is_latlon = false;
            else if (trimmed == "lat,lon")
                out.is_latlon = true;
            else
                fail("expected header 'x,y' or 'lat,lon', got '" + trimmed + "'");
            saw_header = true;
            continue;
        }
        const std::size_t comma = trimmed.find(',');
        if (comma == std::string::npos || trimmed.find(',', comma + 1) !=
                                              std::string::npos)
            fail("expected exactly two comma-separated values");
        try {
            std::size_t p1 = 0, p2 = 0;
            const std::string f1 = trimmed.substr(0, comma);
            const std::string f2 = trimmed.substr(comma + 1);
            const double a = std::stod(f1, &p1);
            const double b = std::stod(f2, &p2);
            if (p1 != f1.size() || p2 != f2.size()) fail("malformed number");
            if (!std::isfinite(a) || !std::isfinite(b)) fail("non-finite value");
            out.rows.emplace_back(a, b);
        } catch (const std::invalid_argument&) {
            fail("malformed number");
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
    }
    if (!saw_header) fail("missing header row");
    return out;
}

inline PointsCsv read_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return read_points_csv(in, path);
}

}  // namespace gridppp

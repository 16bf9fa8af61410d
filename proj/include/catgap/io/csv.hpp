// csv.hpp — deterministic CSV emission: metadata comment header, fixed column
// order, floats at 17 significant digits so values round-trip exactly
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "catgap/common.hpp"

namespace catgap::io {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta;  // emitted as "# key=value"
    std::vector<std::string> columns;
    using Cell = std::variant<std::int64_t, double, std::string>;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != columns.size())
            throw ConfigError("CsvTable: row width does not match the declared columns");
        rows.push_back(std::move(cells));
    }

    std::string str() const {
        std::string out;
        for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ",";
            out += columns[i];
        }
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ",";
                if (std::holds_alternative<std::int64_t>(row[i]))
                    out += std::to_string(std::get<std::int64_t>(row[i]));
                else if (std::holds_alternative<double>(row[i]))
                    out += format_double(std::get<double>(row[i]));
                else
                    out += std::get<std::string>(row[i]);
            }
            out += "\n";
        }
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ConfigError("CsvTable: cannot open '" + path + "' for writing");
        os << str();
    }
};

}  // namespace catgap::io

#include "landscape/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "landscape/common.hpp"

namespace landscape {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);  // fixed \n endings everywhere
    if (!out) throw data_error("cannot write file: " + path);
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw data_error("csv row width != header");
        line(row);
    }
    if (!out) throw data_error("write failed: " + path);
}

}  // namespace landscape

#pragma once

#include <string>
#include <vector>

namespace landscape {

// Shortest exact decimal for a double (%.17g, C locale): identical bytes for
// identical values, so re-running an experiment reproduces its files exactly.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);

}  // namespace landscape

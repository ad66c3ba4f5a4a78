#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nhirota/types.hpp"

namespace nh {

/// Formats a double with 17 significant digits ("NA" for NaN).
std::string fmt17(double v);

/// Minimal CSV table: a header row and rows of numbers.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<RVec> rows;

    std::size_t column(const std::string& name) const;
    RVec col(const std::string& name) const;
};

void write_csv(const std::string& path, const CsvTable& table);
void write_csv(std::ostream& os, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace nh

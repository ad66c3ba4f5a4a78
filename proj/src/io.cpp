#include "nhirota/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nh {

std::string fmt17(double v) {
    if (std::isnan(v)) return "NA";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("csv: missing column '" + name + "'");
}

RVec CsvTable::col(const std::string& name) const {
    const std::size_t c = column(name);
    RVec out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
}

void write_csv(std::ostream& os, const CsvTable& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
    os << '\n';
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt17(r[i]);
        os << '\n';
    }
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path);
    write_csv(os, table);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            first = false;
            try {
                std::size_t pos = 0;
                (void)std::stod(cells.at(0), &pos);
            } catch (const std::exception&) {
                t.header = cells;
                continue;
            }
            for (std::size_t i = 0; i < cells.size(); ++i) t.header.push_back("c" + std::to_string(i));
        }
        RVec row;
        for (const auto& c : cells) {
            if (c == "NA" || c == "nan") {
                row.push_back(std::nan(""));
                continue;
            }
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw ConfigError("csv: bad number '" + c + "' in " + path);
            }
        }
        if (row.size() != t.header.size()) throw ConfigError("csv: ragged row in " + path);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace nh

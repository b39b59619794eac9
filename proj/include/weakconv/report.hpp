#pragma once

#include <limits>
#include <string>
#include <vector>

namespace weakconv {

// Locale-independent shortest-round-trip formatting, shared by every CSV
// writer so identical inputs yield byte-identical files.
std::string fmt_double(double v);

struct Report {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
    // Smallest slack observed across all checks of the report; negative
    // means some row violated its bound.
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string note;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    void merge_margin(double margin);

    std::string to_csv() const;  // header + rows, '\n' line endings
};

std::string cell(double v);
std::string cell(bool v);
std::string cell(const std::string& v);

void write_file(const std::string& path, const std::string& contents);

}  // namespace weakconv

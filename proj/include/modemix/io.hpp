#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modemix {

// Shortest representation that round-trips a double exactly; used for all
// data outputs so repeated runs are byte-identical.
std::string format_double(double v);

// Plain two-or-more-column numeric CSV. First line may be a header; it is
// detected by a non-numeric first field and skipped on read.
struct CsvTable {
    std::vector<std::string> header; // empty if none
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

} // namespace modemix

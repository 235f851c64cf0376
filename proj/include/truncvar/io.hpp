#pragma once

#include "truncvar/path.hpp"

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace truncvar {

class csv_error : public std::runtime_error {
  public:
    csv_error(const std::string& what, std::size_t row)
        : std::runtime_error(what), row(row) {}
    std::size_t row; // 1-based, header is row 1
};

// CSV format: header "time,value", one row per sample, LF line endings.
Path read_path_csv(std::istream& in);
Path read_path_csv_file(const std::string& filename);

void write_path_csv(std::ostream& out, const Path& p);
void write_path_csv_file(const std::string& filename, const Path& p);

// Shortest round-trip decimal formatting, used everywhere a double is printed.
std::string format_double(double x);

} // namespace truncvar

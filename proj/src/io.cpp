#include "truncvar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace truncvar {

std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

double parse_field(const std::string& field, std::size_t row, const char* name) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    // tolerate surrounding spaces
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw csv_error("CSV row " + std::to_string(row) + ": cannot parse " + name +
                            " field '" + field + "'",
                        row);
    }
    return value;
}

} // namespace

Path read_path_csv(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    Path p;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (row == 1) {
            if (line != "time,value") {
                throw csv_error("CSV row 1: expected header 'time,value', got '" + line + "'", 1);
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw csv_error("CSV row " + std::to_string(row) + ": missing comma", row);
        }
        const double t = parse_field(line.substr(0, comma), row, "time");
        const double v = parse_field(line.substr(comma + 1), row, "value");
        if (!std::isfinite(t) || !std::isfinite(v)) {
            throw csv_error("CSV row " + std::to_string(row) + ": non-finite sample", row);
        }
        if (!p.times.empty() && t < p.times.back()) {
            throw csv_error("CSV row " + std::to_string(row) + ": times must be non-decreasing",
                            row);
        }
        p.times.push_back(t);
        p.values.push_back(v);
    }
    return p;
}

Path read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) {
        throw csv_error("cannot open '" + filename + "'", 0);
    }
    return read_path_csv(in);
}

void write_path_csv(std::ostream& out, const Path& p) {
    out << "time,value\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << format_double(p.times[i]) << ',' << format_double(p.values[i]) << '\n';
    }
}

void write_path_csv_file(const std::string& filename, const Path& p) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) {
        throw csv_error("cannot open '" + filename + "' for writing", 0);
    }
    write_path_csv(out, p);
}

} // namespace truncvar

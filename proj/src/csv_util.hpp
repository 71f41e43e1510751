#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "poolsim/errors.hpp"

namespace poolsim::csvutil {

inline std::string trim_cr(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::int64_t parse_int_field(const std::string& field, const std::string& file, int line_no) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(file + " line " + std::to_string(line_no) + ": bad integer '" + field + "'");
    return value;
}

inline double parse_double_field(const std::string& field, const std::string& file, int line_no) {
    try {
        std::size_t consumed = 0;
        double value = std::stod(field, &consumed);
        if (consumed != field.size())
            throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw ParseError(file + " line " + std::to_string(line_no) + ": bad number '" + field + "'");
    }
}

// Reads a headered CSV (UTF-8, LF or CRLF); calls row(fields, line_no) per
// non-empty data row.
template <typename RowFn>
void read_csv(const std::string& path, const std::string& expected_header, RowFn&& row) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_cr(line);
        if (line.empty())
            continue;
        if (!header_seen) {
            if (line != expected_header)
                throw ParseError(path + " line " + std::to_string(line_no) +
                                 ": expected header '" + expected_header + "'");
            header_seen = true;
            continue;
        }
        row(split_commas(line), line_no);
    }
    if (!header_seen)
        throw ParseError(path + ": empty file, expected header '" + expected_header + "'");
}

} // namespace poolsim::csvutil

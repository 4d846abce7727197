#pragma once
#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace dx3 {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // fold -0 into 0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) throw Dx3Error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

/// In-memory CSV document: header plus string-rendered records.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<std::string>& add_row() {
        rows.emplace_back();
        rows.back().reserve(header.size());
        return rows.back();
    }

    void write(std::ostream& os) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "");
        os << '\n';
        for (const auto& row : rows) {
            if (row.size() != header.size())
                throw Dx3Error("CsvTable: row width does not match header");
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "");
            os << '\n';
        }
    }
};

} // namespace dx3

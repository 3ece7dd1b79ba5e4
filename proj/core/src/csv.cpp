#include "memtrans/csv.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace memtrans {

std::string format_sci(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 8);
    if (ec != std::errc{}) throw std::runtime_error("format_sci: conversion failed");
    return std::string(buf, ptr);
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, size_t min_cols) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        bool numeric = true;
        while (std::getline(ss, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
            if (end == field.c_str() || (end && *end)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) continue;  // header or text line
        if (row.size() < min_cols)
            throw std::runtime_error("malformed row in " + path + ": expected at least " +
                                     std::to_string(min_cols) + " columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace memtrans

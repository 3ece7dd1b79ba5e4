#pragma once

#include <string>
#include <vector>

namespace memtrans {

// Scientific notation, 9 significant digits, locale-independent. Used for all
// CSV output so identical runs produce byte-identical files.
std::string format_sci(double value);

// Numeric rows from a comma-separated file. Lines that do not start with a
// number (headers, comments) are skipped; each kept row must have at least
// min_cols fields.
std::vector<std::vector<double>> read_csv_rows(const std::string& path, size_t min_cols);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace memtrans

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lvd {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

/// Strict finite-decimal parse; "inf"/"nan"/garbage raise DataError with
/// `context` in the message.
double parse_finite(std::string_view cell, const std::string& context);

/// Comma-separated table with a mandatory header line. Rows are validated
/// to be rectangular; cells are kept as raw strings for typed parsing at the
/// call site. Line numbers are 1-based with the header on line 1.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

}  // namespace lvd

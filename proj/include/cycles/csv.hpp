#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cycles {

/// Parses a numeric CSV file. '#' comment lines are skipped and a single
/// non-numeric header line is tolerated. Every remaining row must have at
/// least min_columns values.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  int min_columns);

std::string read_file(const std::filesystem::path& path);

/// Writes content through a temporary file in the target directory followed
/// by an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Formats a double with enough digits to round-trip, for stable CSV output.
std::string format_double(double value);

}  // namespace cycles

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace talktopo {

/// Shortest decimal text that parses back to exactly `value`; "inf" / "-inf"
/// for infinities.
std::string format_double(double value);

/// Parses one numeric CSV field. Accepts "inf". Throws DataError on garbage.
double parse_double(std::string_view field);

/// Splits a line on commas, trimming surrounding whitespace and a trailing '\r'.
std::vector<std::string_view> split_csv_line(std::string_view line);

/// Reads a header-less numeric CSV. Every row must have the same width and
/// every value must be finite. Blank lines are skipped.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path);
std::vector<std::vector<double>> read_numeric_csv(std::istream& in, std::string_view source);

void write_numeric_csv(std::ostream& out, const std::vector<std::vector<double>>& rows);

/// Writes `path` through a sibling temporary file that is renamed into place,
/// so readers never observe a partially written file.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace talktopo

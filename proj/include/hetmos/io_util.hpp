#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hetmos {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Strict parse of a whole field; throws ParseError naming `context`.
double parse_double(std::string_view text, const std::string& context);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

std::string read_file(const std::string& path);

// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace hetmos

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mobdd {

/// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line, char sep);
std::string trim(std::string_view s);

/// Round-trippable shortest representation ("%.17g" then trimmed).
std::string format_real(double x);
/// Fixed-point with `digits` decimals; used in report tables.
std::string format_fixed(double x, int digits = 6);

double parse_real(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

}  // namespace mobdd

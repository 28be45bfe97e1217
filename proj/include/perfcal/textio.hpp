#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace perfcal::textio {

// Shortest representation that round-trips to the same double.
std::string format_double(double value);
// Fixed notation with `digits` decimals, for reports.
std::string format_fixed(double value, int digits);

// Strict parse of a full token; returns false on garbage or trailing text.
// Accepts "nan"/"inf" spellings so that callers can reject them explicitly.
bool parse_double(std::string_view token, double& out);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace perfcal::textio

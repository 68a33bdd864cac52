#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdesign::io {

/// Shortest decimal string that reads back to the same double.
/// Infinities print as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

/// Parses a whole string as a double; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);

/// Comma-joined row; fields are emitted verbatim.
std::string csv_row(const std::vector<std::string>& fields);

/// Minimal RFC-4180 reader (no quoted commas are ever written by this
/// library, but quoted fields are accepted).
std::vector<std::vector<std::string>> read_csv(std::string_view text);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace tdesign::io

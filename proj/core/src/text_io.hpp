#pragma once

// Internal helpers for the CSV readers and number formatting.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roampath::detail {

std::string read_text_file(const std::filesystem::path& path);

/// Splits into lines, dropping a trailing '\r' and skipping blank lines.
/// Each entry keeps its 1-based physical line number.
struct Line {
    std::size_t number;
    std::string_view text;
};
std::vector<Line> split_lines(std::string_view content);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s) noexcept;

/// Locale-independent strict parse of the whole field.
std::optional<double> parse_double(std::string_view field) noexcept;
std::optional<long long> parse_integer(std::string_view field) noexcept;

/// Shortest form with the given significant digits, locale independent.
std::string format_general(double value, int significant_digits = 6);

/// Full round-trip precision.
std::string format_roundtrip(double value);

}  // namespace roampath::detail

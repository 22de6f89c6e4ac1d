#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trendcast {

/// Reads a whole file; throws Error naming the path if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> split_lines(std::string_view text);

std::string_view trim(std::string_view s) noexcept;

/// One entry per non-blank line; lines starting with '#' are comments.
std::vector<std::string> parse_word_list(std::string_view text);

/// Splits one CSV record on commas, honouring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace trendcast

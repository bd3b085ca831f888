#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace mmrclust {

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);

/// Writes atomically enough for our purposes: truncate, write, check.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace mmrclust

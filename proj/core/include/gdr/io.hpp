#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gdr::io {

/// Reads a whole file as bytes. Throws InputError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes a file atomically: write to a sibling temp file, then rename.
/// Creates parent directories as needed.
void atomic_write(const std::filesystem::path& path, std::string_view data);

/// Splits into lines on '\n', dropping a trailing '\r' from each line.
/// A trailing newline does not produce an empty final element.
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace gdr::io

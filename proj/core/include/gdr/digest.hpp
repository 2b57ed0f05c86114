#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

namespace gdr::digest {

/// SHA-256 of a byte string.
std::array<unsigned char, 32> sha256(std::string_view data);

/// SHA-256 rendered as lowercase hex.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's contents. Throws InputError if unreadable.
std::string file_sha256_hex(const std::filesystem::path& path);

}  // namespace gdr::digest

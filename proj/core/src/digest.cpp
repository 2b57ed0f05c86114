#include "gdr/digest.hpp"

#include <openssl/sha.h>

#include "gdr/errors.hpp"
#include "gdr/io.hpp"

namespace gdr::digest {

std::array<unsigned char, 32> sha256(std::string_view data) {
  std::array<unsigned char, 32> out{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
         out.data());
  return out;
}

std::string sha256_hex(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  auto raw = sha256(data);
  std::string out;
  out.reserve(64);
  for (unsigned char b : raw) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

std::string file_sha256_hex(const std::filesystem::path& path) {
  return sha256_hex(io::read_file(path));
}

}  // namespace gdr::digest

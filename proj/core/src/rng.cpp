#include "gdr/rng.hpp"

namespace gdr::rng {

std::uint64_t substream_seed(std::uint64_t root, std::string_view label) {
  // FNV-1a over the label, folded into the root seed.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return mix(root ^ h);
}

}  // namespace gdr::rng

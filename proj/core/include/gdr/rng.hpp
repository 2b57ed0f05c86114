#pragma once

#include <cstdint>
#include <string_view>

namespace gdr::rng {

/// 64-bit finalizer used by the splitmix64 generator. Pure function of the
/// input, identical on every platform.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent seed for a labeled substream. All randomness in a
/// run fans out from one root seed through labels like "bench/us_ssn" or
/// "quiz", so a single --seed reproduces an entire run.
std::uint64_t substream_seed(std::uint64_t root, std::string_view label);

/// Counter-based generator: the i-th draw is a pure function of (seed, i).
/// Stateless apart from the counter, so values are reproducible across
/// platforms and safe to recompute from any position.
class Stream {
public:
  explicit constexpr Stream(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t next() { return mix(seed_ + ++counter_ * kStep); }

  /// Uniform-ish draw in [0, n). n must be > 0.
  constexpr std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }

  constexpr char pick(std::string_view alphabet) {
    return alphabet[below(static_cast<std::uint32_t>(alphabet.size()))];
  }

private:
  static constexpr std::uint64_t kStep = 0x9e3779b97f4a7c15ull;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace gdr::rng

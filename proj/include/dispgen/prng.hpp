#pragma once

#include <cstdint>

namespace dispgen {

// SplitMix64 (Steele/Lea/Vigna). Used instead of std::mt19937_64 plus
// std::uniform_int_distribution because the standard distributions are
// implementation-defined; every draw here is bit-identical on every
// platform. Seeding: the raw 64-bit seed is the initial state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0, by rejection of the biased low range.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t v = next();
    while (v < threshold) v = next();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace dispgen

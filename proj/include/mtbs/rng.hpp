#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mtbs/core.hpp"

namespace mtbs {

// Seeded generator with explicit sub-stream derivation: substream(seed, k)
// yields the same sequence on every platform for the same (seed, k), so a
// retry or worker index selects a reproducible independent stream. Bounded
// draws use rejection on the raw 64-bit output instead of
// std::uniform_int_distribution, whose mapping is implementation defined.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(mix(mix(seed) ^ kStreamSalt)) {}

  static SplitRng substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitRng(mix(seed) ^ mix(stream ^ kStreamSalt));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rng: empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t v = engine_();
    while (v > limit) v = engine_();
    return v % n;
  }

  // Uniform draw from [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kStreamSalt = 0x5d8f23a917c46bd1ULL;

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

// Uniformly chosen size-m subset of [0, n), returned sorted.
Block random_block(SplitRng& rng, int n, int m);

// Pattern of length n with a uniformly chosen domain of the given size and
// independent uniform values on the domain.
Pattern random_pattern(SplitRng& rng, int n, int dom_size);

// Uniform bit string of length n.
BitString random_bitstring(SplitRng& rng, int n);

}  // namespace mtbs

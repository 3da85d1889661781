#pragma once

#include <cstdint>

namespace bdlrpc {

// SplitMix64 (Steele/Lea/Flood). Counter-based: the state walks a fixed odd
// stride and each output is a bijective mix of the counter, so a (seed,
// index) pair deterministically names an independent stream for parallel
// trials. All samplers in this library take one of these by reference; there
// is no global randomness anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, bound), bound >= 1. Rejection keeps it exact; for the tiny
  // bounds used here (q <= 251) the reject probability is ~2^-56.
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  // Seed for the stream of trial `index` within a run seeded by `seed`:
  // the splitmix output at counter position index+1.
  static uint64_t derive(uint64_t seed, uint64_t index) {
    SplitMix64 g(seed + kGamma * index);
    return g.next();
  }

 private:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  uint64_t state_;
};

}  // namespace bdlrpc

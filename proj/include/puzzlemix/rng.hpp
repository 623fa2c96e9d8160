#pragma once

#include <cstdint>

namespace puzzlemix {

// SplitMix64 finalizer, used for seeding and stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Xoshiro256++ with platform-independent helpers (no std::*_distribution,
// whose output is implementation defined).
//
// Streams are derived counter-style: stream(seed, i) depends only on the
// pair (seed, i), so trial i sees the same randomness no matter how trials
// are partitioned across workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  static Rng stream(std::uint64_t seed, std::uint64_t idx) {
    return Rng(mix64(seed) + 0x9e3779b97f4a7c15ULL * idx);
  }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = mix64(x++);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased uniform draw in [0, m) (Lemire's method with rejection).
  std::uint32_t below(std::uint32_t m) {
    std::uint64_t x = next_u64();
    unsigned __int128 p = (unsigned __int128)x * m;
    auto lo = (std::uint64_t)p;
    if (lo < m) {
      const std::uint64_t cutoff = (0 - std::uint64_t(m)) % m;
      while (lo < cutoff) {
        x = next_u64();
        p = (unsigned __int128)x * m;
        lo = (std::uint64_t)p;
      }
    }
    return (std::uint32_t)(p >> 64);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (sine branch discarded).
  double gauss();

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace puzzlemix

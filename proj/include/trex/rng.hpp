#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

namespace trex {

// Deterministic PRNG (splitmix64-seeded xoshiro256**). We do not use the
// <random> distributions because their output is implementation-defined;
// every draw here reproduces bit-for-bit across platforms, which the
// --rng-seed reproducibility contract depends on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed0_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform value in [0, n), unbiased (rejection sampling). n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  /// Independent child stream addressed by (label, index). Children derive
  /// from the root seed, not the current state, so the draw order in the
  /// parent does not affect them.
  Rng child(std::string_view label, std::uint64_t index = 0) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed0_;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= index + 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = h;
    return Rng(splitmix(x));
  }

  std::uint64_t root_seed() const { return seed0_; }

  /// Sorted uniform l-subset of [0, t) (Floyd's algorithm).
  std::vector<std::uint32_t> subset(std::uint32_t t, std::uint32_t l) {
    std::vector<std::uint32_t> out;
    out.reserve(l);
    for (std::uint32_t j = t - l; j < t; ++j) {
      const std::uint32_t v = static_cast<std::uint32_t>(below(j + 1));
      bool dup = false;
      for (auto u : out) dup |= (u == v);
      out.push_back(dup ? j : v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed0_;
  std::uint64_t s_[4];
};

}  // namespace trex

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace trex {

inline int parity64(std::uint64_t x) { return std::popcount(x) & 1; }

/// Half-width of a two-sided 99% Hoeffding confidence interval for a
/// mean of `n` samples in [0,1]: sqrt(ln(2/0.01) / (2n)).
inline double hoeffding99(std::uint64_t n) {
  if (n == 0) return 1.0;
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
}

/// Binomial coefficient, saturating at `cap` to avoid overflow.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

/// Advances `comb` (sorted, distinct, values in [0,t)) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::uint32_t>& comb,
                             std::uint32_t t) {
  const std::size_t l = comb.size();
  std::size_t i = l;
  while (i-- > 0) {
    if (comb[i] + 1 <= t - (l - i)) {
      ++comb[i];
      for (std::size_t j = i + 1; j < l; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline std::uint64_t next_prime_at_least(std::uint64_t n) {
  while (!is_prime_u64(n)) ++n;
  return n;
}

/// Smallest h >= 1 with h^d >= n.
inline std::uint32_t ceil_root(std::uint64_t n, std::uint32_t d) {
  if (n <= 1) return 1;
  std::uint32_t h = static_cast<std::uint32_t>(
      std::ceil(std::pow(static_cast<double>(n), 1.0 / d)));
  if (h < 1) h = 1;
  auto pow_ge = [&](std::uint32_t base) {
    unsigned __int128 p = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
      p *= base;
      if (p >= n) return true;
    }
    return p >= n;
  };
  while (h > 1 && pow_ge(h - 1)) --h;
  while (!pow_ge(h)) ++h;
  return h;
}

/// Runs fn(i) for i in [0, count). Work is split into contiguous chunks;
/// fn must only touch state indexed by i, so any thread count yields the
/// same result. `threads` <= 1 runs inline.
inline void parallel_for(std::uint64_t count,
                         const std::function<void(std::uint64_t)>& fn,
                         unsigned threads = 1) {
  if (threads <= 1 || count < 2 * threads) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace trex

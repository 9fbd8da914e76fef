#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trex/bitstring.hpp"
#include "trex/rng.hpp"
#include "trex/util.hpp"

namespace trex {

// m subsets S_1..S_m of [t], each of size l, pairwise intersections <= r.
// Slicing a length-t seed through these sets is what turns one seed into m
// nearly-independent length-l subseeds.
struct DesignFamily {
  std::uint32_t t = 0;
  std::uint32_t l = 0;
  std::uint32_t r = 0;
  std::vector<std::vector<std::uint32_t>> sets;
};

/// Exhaustive check of the DesignFamily invariants: each set has exactly l
/// distinct sorted members of [0, t), and every pair intersects in <= r
/// positions.
inline bool verify_design(const DesignFamily& d) {
  for (const auto& s : d.sets) {
    if (s.size() != d.l) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= d.t) return false;
      if (i > 0 && s[i] <= s[i - 1]) return false;
    }
  }
  for (std::size_t i = 0; i < d.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < d.sets.size(); ++j) {
      const auto& a = d.sets[i];
      const auto& b = d.sets[j];
      std::uint32_t common = 0;
      std::size_t p = 0, q = 0;
      while (p < a.size() && q < b.size()) {
        if (a[p] < b[q])
          ++p;
        else if (a[p] > b[q])
          ++q;
        else {
          ++common;
          ++p;
          ++q;
        }
      }
      if (common > d.r) return false;
    }
  }
  return true;
}

namespace detail {

inline bool design_candidate_ok(const std::vector<std::uint32_t>& cand,
                                const std::vector<std::vector<std::uint32_t>>& sets,
                                std::uint32_t r) {
  for (const auto& s : sets) {
    std::uint32_t common = 0;
    std::size_t p = 0, q = 0;
    while (p < cand.size() && q < s.size()) {
      if (cand[p] < s[q])
        ++p;
      else if (cand[p] > s[q])
        ++q;
      else {
        if (++common > r) return false;
        ++p;
        ++q;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Greedy design construction. The universe starts at t = l and grows in
/// blocks only when the current universe cannot host another valid set; for
/// each set we take the lexicographically first valid subset when the search
/// space is small, otherwise seeded random candidates. Deterministic in
/// (m, l, r), and a prefix of the m'=m+1 family equals the m family, so the
/// universe size is non-decreasing in m.
///
/// The universe is capped at ceil(e^2 * ceil(l^2 / r)); the greedy step
/// succeeds within that cap with margin to spare (a uniform size-l subset of
/// a universe of e^2*l^2/r points violates the bound against any fixed set
/// with probability well under 1/m once t reaches the cap), and the cap is
/// the published C_design = e^2 constant.
inline DesignFamily make_design(std::uint32_t m, std::uint32_t l,
                                std::uint32_t r) {
  if (m < 1) throw std::invalid_argument("make_design: m must be >= 1");
  if (r < 1 || r > l)
    throw std::invalid_argument("make_design: need 1 <= r <= l");

  const double e2 = std::exp(2.0);
  const std::uint64_t block = (std::uint64_t{l} * l + r - 1) / r;  // ceil(l^2/r)
  const std::uint32_t t_cap = static_cast<std::uint32_t>(
      std::ceil(e2 * static_cast<double>(block)));
  const std::uint32_t grow = std::max<std::uint32_t>(1, (l + 1) / 2);

  DesignFamily d;
  d.l = l;
  d.r = r;
  d.t = l;
  d.sets.reserve(m);

  for (std::uint32_t idx = 0; idx < m; ++idx) {
    bool placed = false;
    while (!placed) {
      // Exhaustive lexicographic scan when the candidate space is small:
      // deterministic and takes the lowest-index valid subset.
      if (binomial_capped(d.t, l, 100000) <= 100000) {
        std::vector<std::uint32_t> comb(l);
        for (std::uint32_t i = 0; i < l; ++i) comb[i] = i;
        do {
          if (detail::design_candidate_ok(comb, d.sets, r)) {
            d.sets.push_back(comb);
            placed = true;
            break;
          }
        } while (next_combination(comb, d.t));
      } else {
        // Seeded sampling; seeds depend on (l, r, set index, attempt) but
        // not on m, which keeps families prefix-stable.
        for (std::uint32_t attempt = 0; attempt < 400 && !placed; ++attempt) {
          Rng rng(0x9d2c5680u);
          Rng stream = rng.child("design", (std::uint64_t{l} << 48) ^
                                               (std::uint64_t{r} << 40) ^
                                               (std::uint64_t{idx} << 16) ^
                                               attempt ^
                                               (std::uint64_t{d.t} << 32));
          auto cand = stream.subset(d.t, l);
          if (detail::design_candidate_ok(cand, d.sets, r)) {
            d.sets.push_back(cand);
            placed = true;
          }
        }
      }
      if (!placed) {
        if (d.t >= t_cap)
          throw std::runtime_error(
              "make_design: universe cap exceeded; parameters infeasible for "
              "the greedy construction");
        d.t = std::min(t_cap, d.t + grow);
      }
    }
  }
  return d;
}

/// Bits of y at the sorted indices of `s`, ascending. |y| must equal t.
inline BitString slice_seed(const BitString& y,
                            const std::vector<std::uint32_t>& s,
                            std::uint32_t t) {
  if (y.size() != t)
    throw std::invalid_argument("slice_seed: seed length != t");
  return y.select(s);
}

}  // namespace trex

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trex/bitstring.hpp"
#include "trex/dist.hpp"
#include "trex/rational.hpp"
#include "trex/rng.hpp"
#include "trex/trevisan.hpp"
#include "trex/util.hpp"

namespace trex {

// A candidate extractor under test: n source bits, t seed bits, m output
// bits, and the map itself.
struct ExtractorFn {
  std::uint32_t n = 0;
  std::uint32_t t = 0;
  std::uint32_t m = 0;
  std::function<BitString(const BitString&, const BitString&)> fn;
};

inline ExtractorFn extractor_fn_trevisan(const ExtractorParams& p) {
  ExtractorFn e;
  e.n = static_cast<std::uint32_t>(p.n);
  e.t = p.t;
  e.m = p.m;
  e.fn = [&p](const BitString& x, const BitString& y) {
    return extract(x, y, p);
  };
  return e;
}

inline ExtractorFn extractor_fn_hash(std::uint32_t n, std::uint32_t m) {
  ExtractorFn e;
  e.n = n;
  e.t = n + m - 1;
  e.m = m;
  e.fn = [m](const BitString& x, const BitString& y) {
    return leftover_hash(x, y, m);
  };
  return e;
}

/// n must be a power of two so the seed is exactly the sampled index.
inline ExtractorFn extractor_fn_bitselect(std::uint32_t n) {
  std::uint32_t t = 0;
  while ((std::uint32_t{1} << t) < n) ++t;
  if ((std::uint32_t{1} << t) != n)
    throw std::invalid_argument("bit_select wrapper needs n a power of two");
  ExtractorFn e;
  e.n = n;
  e.t = t;
  e.m = 1;
  e.fn = [](const BitString& x, const BitString& y) {
    BitString out(1);
    out.set(0, bit_select(x, y.to_uint()));
    return out;
  };
  return e;
}

inline ExtractorFn extractor_fn_constant(std::uint32_t n, std::uint32_t t,
                                         std::uint32_t m) {
  ExtractorFn e;
  e.n = n;
  e.t = t;
  e.m = m;
  e.fn = [m](const BitString&, const BitString&) { return BitString(m); };
  return e;
}

namespace detail {

/// E(x, y) for every x in the support and every seed, as packed integers.
/// The m <= 24 limit keeps outputs in one word.
inline std::vector<std::vector<std::uint32_t>> eval_table(
    const ExtractorFn& E, const std::vector<BitString>& support) {
  if (E.m > 24) throw std::invalid_argument("verify: m above 24");
  if (E.t > 24) throw std::invalid_argument("verify: t above 24");
  const std::uint64_t seeds = std::uint64_t{1} << E.t;
  std::vector<std::vector<std::uint32_t>> table(support.size());
  for (std::size_t xi = 0; xi < support.size(); ++xi) {
    table[xi].resize(seeds);
    for (std::uint64_t yv = 0; yv < seeds; ++yv) {
      const BitString z =
          E.fn(support[xi], BitString::from_uint(yv, E.t));
      if (z.size() != E.m)
        throw std::logic_error("extractor returned wrong output length");
      table[xi][yv] = static_cast<std::uint32_t>(z.to_uint());
    }
  }
  return table;
}

/// Exact distance of (Y, E(X,Y)) from (Y, U_m) given the evaluation table.
/// Everything is integer counting over the common denominator
/// |S| * 2^t * 2^m; one Rational materializes at the end.
inline Rational distance_from_table(
    const std::vector<std::vector<std::uint32_t>>& table, std::uint32_t t,
    std::uint32_t m) {
  const std::uint64_t seeds = std::uint64_t{1} << t;
  const std::uint64_t outs = std::uint64_t{1} << m;
  const std::int64_t S = static_cast<std::int64_t>(table.size());
  // For each seed: counts over outputs. |P1 - P2| scaled by D = S*2^t*2^m
  // is |count * 2^m - S| for seen outputs and S for each unseen one.
  std::int64_t total = 0;
  std::vector<std::int64_t> counts(outs, 0);
  for (std::uint64_t yv = 0; yv < seeds; ++yv) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t xi = 0; xi < table.size(); ++xi)
      ++counts[table[xi][yv]];
    for (std::uint64_t z = 0; z < outs; ++z) {
      const std::int64_t diff =
          counts[z] * static_cast<std::int64_t>(outs) - S;
      total += diff < 0 ? -diff : diff;
    }
  }
  const std::int64_t D =
      S * static_cast<std::int64_t>(seeds) * static_cast<std::int64_t>(outs);
  return Rational(total, 2 * D);
}

}  // namespace detail

/// Exact statistical distance of (Y, E(X, Y)) from (Y, U_m), probabilities
/// as exact rationals; X uniform over its support, Y uniform over all
/// seeds. Rejects when the enumeration |support| * 2^t * 2^m would exceed
/// the budget.
inline Rational extractor_distance_exact(const ExtractorFn& E,
                                         const FlatSource& X,
                                         std::uint64_t budget = std::uint64_t{1}
                                                                << 26) {
  if (X.n() != E.n)
    throw std::invalid_argument("extractor_distance_exact: source width != n");
  const std::uint64_t cells = static_cast<std::uint64_t>(X.support().size())
                              << (E.t + E.m);
  if (cells > budget)
    throw std::invalid_argument(
        "extractor_distance_exact: needs " + std::to_string(cells) +
        " cells, budget " + std::to_string(budget));
  return detail::distance_from_table(detail::eval_table(E, X.support()), E.t,
                                     E.m);
}

// ---------------------------------------------------------------------------
// Worst flat source search
// ---------------------------------------------------------------------------

struct WorstSourceResult {
  std::vector<BitString> support;  // the maximizing source found
  Rational distance{0};
  bool exhaustive = false;
  std::uint64_t sources_checked = 0;
};

namespace detail {

inline std::vector<BitString> support_from_values(
    const std::vector<std::uint64_t>& vals, std::uint32_t n) {
  std::vector<BitString> out;
  out.reserve(vals.size());
  for (auto v : vals) out.push_back(BitString::from_uint(v, n));
  return out;
}

/// Structured flat-source families: prefix-style cylinders (k free
/// positions, the rest pinned), Hamming balls, and affine subspaces - the
/// shapes that historically embarrass weak extractors - plus uniform
/// random supports.
inline std::vector<std::uint64_t> structured_support(std::uint32_t n,
                                                     std::uint32_t k,
                                                     std::uint32_t family,
                                                     Rng& rng) {
  const std::uint64_t size = std::uint64_t{1} << k;
  std::vector<std::uint64_t> vals;
  vals.reserve(size);
  switch (family % 4) {
    case 0: {  // cylinder: random free positions, random pinned pattern
      auto free_pos = rng.subset(n, k);
      const std::uint64_t pattern = rng.next() & ((std::uint64_t{1} << n) - 1);
      std::uint64_t fixed_mask = (std::uint64_t{1} << n) - 1;
      for (auto p : free_pos) fixed_mask &= ~(std::uint64_t{1} << p);
      for (std::uint64_t v = 0; v < size; ++v) {
        std::uint64_t x = pattern & fixed_mask;
        for (std::uint32_t b = 0; b < k; ++b)
          if ((v >> b) & 1) x |= std::uint64_t{1} << free_pos[b];
        vals.push_back(x);
      }
      break;
    }
    case 1: {  // Hamming ball: the 2^k strings closest to a random center
      const std::uint64_t center =
          rng.next() & ((std::uint64_t{1} << n) - 1);
      std::vector<std::uint64_t> all(std::uint64_t{1} << n);
      for (std::uint64_t v = 0; v < all.size(); ++v) all[v] = v;
      std::sort(all.begin(), all.end(),
                [center](std::uint64_t a, std::uint64_t b) {
                  const int da = __builtin_popcountll(a ^ center);
                  const int db = __builtin_popcountll(b ^ center);
                  return da != db ? da < db : a < b;
                });
      vals.assign(all.begin(), all.begin() + size);
      break;
    }
    case 2: {  // affine subspace: span of k independent vectors + offset
      std::vector<std::uint64_t> basis;   // kept in decreasing leading-bit order
      while (basis.size() < k) {
        std::uint64_t cand = rng.next() & ((std::uint64_t{1} << n) - 1);
        for (auto b : basis) cand = std::min(cand, cand ^ b);
        if (cand != 0) {
          basis.push_back(cand);
          std::sort(basis.rbegin(), basis.rend());
        }
      }
      const std::uint64_t offset =
          rng.next() & ((std::uint64_t{1} << n) - 1);
      for (std::uint64_t v = 0; v < size; ++v) {
        std::uint64_t x = offset;
        for (std::uint32_t b = 0; b < k; ++b)
          if ((v >> b) & 1) x ^= basis[b];
        vals.push_back(x);
      }
      break;
    }
    default: {  // uniform random support
      auto idx = rng.subset(static_cast<std::uint32_t>(std::uint64_t{1} << n),
                            static_cast<std::uint32_t>(size));
      vals.assign(idx.begin(), idx.end());
      break;
    }
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace detail

/// Maximizing flat source of min-entropy exactly k for E. Exhaustive mode
/// enumerates all C(2^n, 2^k) supports (only when that count fits the
/// budget); sampled mode sweeps structured families plus random supports.
inline WorstSourceResult worst_flat_source(const ExtractorFn& E,
                                           std::uint32_t n, std::uint32_t k,
                                           bool exhaustive,
                                           std::uint64_t budget, Rng& rng) {
  if (n != E.n) throw std::invalid_argument("worst_flat_source: n mismatch");
  if (k > n) throw std::invalid_argument("worst_flat_source: k > n");
  const std::uint64_t universe = std::uint64_t{1} << n;
  const std::uint64_t size = std::uint64_t{1} << k;
  WorstSourceResult res;

  // Shared evaluation table over every possible x; sources index into it.
  std::vector<BitString> all_x;
  all_x.reserve(universe);
  for (std::uint64_t v = 0; v < universe; ++v)
    all_x.push_back(BitString::from_uint(v, n));
  const auto full_table = detail::eval_table(E, all_x);

  auto distance_of = [&](const std::vector<std::uint64_t>& vals) {
    std::vector<std::vector<std::uint32_t>> table;
    table.reserve(vals.size());
    for (auto v : vals) table.push_back(full_table[v]);
    return detail::distance_from_table(table, E.t, E.m);
  };
  auto offer = [&](const std::vector<std::uint64_t>& vals) {
    const Rational d = distance_of(vals);
    ++res.sources_checked;
    if (res.support.empty() || res.distance < d) {
      res.distance = d;
      res.support = detail::support_from_values(vals, n);
    }
  };

  if (exhaustive) {
    if (binomial_capped(universe, size, budget) > budget)
      throw std::invalid_argument(
          "worst_flat_source: exhaustive mode needs C(2^n, 2^k) <= budget");
    std::vector<std::uint32_t> comb(size);
    for (std::uint64_t i = 0; i < size; ++i)
      comb[i] = static_cast<std::uint32_t>(i);
    do {
      std::vector<std::uint64_t> vals(comb.begin(), comb.end());
      offer(vals);
    } while (next_combination(comb, static_cast<std::uint32_t>(universe)));
    res.exhaustive = true;
    return res;
  }

  for (std::uint64_t i = 0; i < budget; ++i) {
    Rng stream = rng.child("flat-source", i);
    auto vals = detail::structured_support(
        n, k, static_cast<std::uint32_t>(i), stream);
    if (vals.size() == size) offer(vals);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Classical bounded-storage adversary search
// ---------------------------------------------------------------------------

struct StorageResult {
  Rational advantage{0};
  bool exhaustive = false;
  std::uint64_t maps_checked = 0;
};

/// Max over storage maps c: support -> {0,1}^b of the best distinguisher's
/// advantage at telling (c(X), Y, E(X,Y)) from (c(X), Y, U_m). The best
/// test set achieves exactly the statistical distance, so each map is
/// scored by one exact distance computation. All (2^b)^|support| maps are
/// enumerated when that count fits the budget; otherwise `budget` sampled
/// maps (labeled non-exhaustive).
inline StorageResult classical_storage_advantage(const ExtractorFn& E,
                                                 const FlatSource& X,
                                                 std::uint32_t b,
                                                 std::uint64_t budget,
                                                 Rng& rng) {
  if (X.n() != E.n)
    throw std::invalid_argument("classical_storage_advantage: n mismatch");
  const std::size_t S = X.support().size();
  const std::uint64_t seeds = std::uint64_t{1} << E.t;
  const std::uint64_t outs = std::uint64_t{1} << E.m;
  const std::uint64_t cells = std::uint64_t{1} << b;
  const auto table = detail::eval_table(E, X.support());

  // Advantage of one storage map, by integer counting over the common
  // denominator D = |S| * 2^t * 2^m: within each (storage value v, seed y)
  // stratum the real side weights outputs by their preimage counts and the
  // ideal side spreads |c^-1(v)| uniformly.
  std::vector<std::uint32_t> cell_of(S, 0);
  std::vector<std::int64_t> counts(outs, 0);
  auto advantage_of = [&]() {
    std::int64_t total = 0;
    for (std::uint64_t v = 0; v < cells; ++v) {
      std::int64_t pre = 0;
      for (std::size_t xi = 0; xi < S; ++xi)
        if (cell_of[xi] == v) ++pre;
      if (pre == 0) continue;
      for (std::uint64_t yv = 0; yv < seeds; ++yv) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t xi = 0; xi < S; ++xi)
          if (cell_of[xi] == v) ++counts[table[xi][yv]];
        for (std::uint64_t z = 0; z < outs; ++z) {
          const std::int64_t diff =
              counts[z] * static_cast<std::int64_t>(outs) - pre;
          total += diff < 0 ? -diff : diff;
        }
      }
    }
    const std::int64_t D = static_cast<std::int64_t>(S) *
                           static_cast<std::int64_t>(seeds) *
                           static_cast<std::int64_t>(outs);
    return Rational(total, 2 * D);
  };

  StorageResult res;
  // (2^b)^|S| maps; overflow-safe feasibility check.
  bool fits = true;
  std::uint64_t map_count = 1;
  for (std::size_t xi = 0; xi < S && fits; ++xi) {
    if (map_count > budget / cells + 1) fits = false;
    map_count *= cells;
    if (map_count > budget) fits = false;
  }
  if (fits && map_count <= budget) {
    res.exhaustive = true;
    for (std::uint64_t mi = 0; mi < map_count; ++mi) {
      std::uint64_t rest = mi;
      for (std::size_t xi = 0; xi < S; ++xi) {
        cell_of[xi] = static_cast<std::uint32_t>(rest % cells);
        rest /= cells;
      }
      const Rational adv = advantage_of();
      ++res.maps_checked;
      if (res.advantage < adv) res.advantage = adv;
    }
  } else {
    for (std::uint64_t mi = 0; mi < budget; ++mi) {
      for (std::size_t xi = 0; xi < S; ++xi)
        cell_of[xi] = static_cast<std::uint32_t>(rng.below(cells));
      const Rational adv = advantage_of();
      ++res.maps_checked;
      if (res.advantage < adv) res.advantage = adv;
    }
  }
  return res;
}

/// Integer distance totals for every nonempty support mask over {0,1}^n
/// (n <= 4, so 2^16 - 1 masks at most). The exact distance of the flat
/// source with support mask A is
///     totals[A] / (2 * popcount(A) * 2^(t+m)),
/// and a b-bit storage map c splitting A into cells A_v has exact advantage
///     (sum_v totals[A_v]) / (2 * popcount(A) * 2^(t+m))
/// since the best distinguisher conditions on the cell. One pass over all
/// masks makes every lemma-style sweep a matter of integer adds.
inline std::vector<std::int64_t> flat_subset_totals(const ExtractorFn& E,
                                                    std::uint32_t n) {
  if (n > 4)
    throw std::invalid_argument(
        "flat_subset_totals: full enumeration only up to n = 4");
  const std::uint64_t universe = std::uint64_t{1} << n;
  std::vector<BitString> all_x;
  for (std::uint64_t v = 0; v < universe; ++v)
    all_x.push_back(BitString::from_uint(v, n));
  const auto full_table = detail::eval_table(E, all_x);

  const std::uint64_t seeds = std::uint64_t{1} << E.t;
  const std::uint64_t outs = std::uint64_t{1} << E.m;
  std::vector<std::int64_t> totals(std::uint64_t{1} << universe, 0);
  std::vector<std::int64_t> counts(outs, 0);
  for (std::uint64_t mask = 1; mask < totals.size(); ++mask) {
    const std::int64_t S = __builtin_popcountll(mask);
    std::int64_t total = 0;
    for (std::uint64_t yv = 0; yv < seeds; ++yv) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint64_t v = mask; v != 0; v &= v - 1)
        ++counts[full_table[static_cast<std::uint64_t>(
            __builtin_ctzll(v))][yv]];
      for (std::uint64_t z = 0; z < outs; ++z) {
        const std::int64_t diff =
            counts[z] * static_cast<std::int64_t>(outs) - S;
        total += diff < 0 ? -diff : diff;
      }
    }
    totals[mask] = total;
  }
  return totals;
}

/// Exact distance of the flat source with the given support mask, from a
/// flat_subset_totals vector.
inline Rational subset_distance(const std::vector<std::int64_t>& totals,
                                std::uint64_t mask, std::uint32_t t,
                                std::uint32_t m) {
  const std::int64_t S = __builtin_popcountll(mask);
  return Rational(totals[mask],
                  2 * S * (std::int64_t{1} << (t + m)));
}

/// Per-support-size worst distances over every flat source on n bits:
/// profile[s] = max over supports of size s of the exact distance. Suffix
/// maxima of this profile answer "is E a (k', eps) extractor over all flat
/// sources" queries exactly.
inline std::vector<Rational> flat_distance_profile(const ExtractorFn& E,
                                                   std::uint32_t n) {
  const auto totals = flat_subset_totals(E, n);
  const std::uint64_t universe = std::uint64_t{1} << n;
  // Same-size masks share a denominator, so compare raw totals.
  std::vector<std::int64_t> best(universe + 1, 0);
  for (std::uint64_t mask = 1; mask < totals.size(); ++mask) {
    auto& slot = best[static_cast<std::size_t>(__builtin_popcountll(mask))];
    slot = std::max(slot, totals[mask]);
  }
  std::vector<Rational> profile(universe + 1, Rational(0));
  for (std::uint64_t s = 1; s <= universe; ++s)
    profile[s] = Rational(best[s], 2 * static_cast<std::int64_t>(s) *
                                       (std::int64_t{1} << (E.t + E.m)));
  return profile;
}

}  // namespace trex

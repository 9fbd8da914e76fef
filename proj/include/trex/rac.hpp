#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trex/bitstring.hpp"
#include "trex/rational.hpp"
#include "trex/rng.hpp"
#include "trex/util.hpp"

namespace trex {

// ---------------------------------------------------------------------------
// Majority amplification
// ---------------------------------------------------------------------------

struct AmplifyResult {
  std::uint32_t T = 0;        // votes per decoding
  double measured = 0;        // Monte-Carlo majority success rate
  double base_success = 0;
  std::uint64_t trials = 0;
};

/// Votes needed to push a 1/2+delta per-answer success to 1-eps by majority:
/// T = ceil(2 ln(1/eps) / delta^2), the documented constant.
inline std::uint32_t amplify_votes(double base_success, double eps) {
  const double delta = base_success - 0.5;
  if (!(delta > 0.0))
    throw std::invalid_argument("amplify: base success must exceed 1/2");
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("amplify: eps in (0, 1)");
  return static_cast<std::uint32_t>(
      std::ceil(2.0 * std::log(1.0 / eps) / (delta * delta)));
}

/// Simulates majority voting over T independent answers, each correct with
/// probability base_success; even-vote ties fall to a fair coin.
inline AmplifyResult amplify(double base_success, double eps,
                             std::uint64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("amplify: trials >= 1");
  if (base_success > 1.0)
    throw std::invalid_argument("amplify: base success above 1");
  AmplifyResult res;
  res.T = amplify_votes(base_success, eps);
  res.base_success = base_success;
  res.trials = trials;
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint32_t correct = 0;
    for (std::uint32_t v = 0; v < res.T; ++v)
      correct += rng.bernoulli(base_success) ? 1 : 0;
    if (2 * correct > res.T)
      ++wins;
    else if (2 * correct == res.T && (rng.next() & 1))
      ++wins;
  }
  res.measured = static_cast<double>(wins) / static_cast<double>(trials);
  return res;
}

/// Exact majority success: Pr[Bin(T, p) > T/2] plus half the tie mass.
/// The ground-truth oracle amplify is measured against.
inline double majority_tail_exact(std::uint32_t T, double p) {
  // Binomial pmf by stable recurrence; T stays desk-scale (<= ~10^4).
  double total = 0.0;
  double logp = std::log(p);
  double log1p_ = std::log1p(-p);
  for (std::uint32_t k = 0; k <= T; ++k) {
    if (2 * k < T) continue;
    double logc = std::lgamma(static_cast<double>(T) + 1) -
                  std::lgamma(static_cast<double>(k) + 1) -
                  std::lgamma(static_cast<double>(T - k) + 1);
    const double mass = std::exp(logc + k * logp + (T - k) * log1p_);
    total += (2 * k == T) ? mass / 2.0 : mass;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Regev's hash-based random access code
// ---------------------------------------------------------------------------

// Encoding of a one-1-per-block string: a pairwise-independent hash
// h: [sqrt(n)] -> [range] plus the hash of each block's 1-position. The
// decoder answers a position query by re-hashing and comparing.
struct RegevEncoding {
  std::uint64_t n = 0;
  std::uint32_t root = 0;   // sqrt(n): block count and block size
  std::uint32_t range = 10;
  std::uint64_t q = 0;      // prime modulus >= root
  std::uint64_t a = 0, b = 0;  // hash seed: h(x) = ((a x + b) mod q) mod range
  std::vector<std::uint32_t> values;  // h of the 1-position, per block

  std::uint32_t hash(std::uint64_t x) const {
    return static_cast<std::uint32_t>(((a * x + b) % q) % range);
  }

  /// Measured encoding size: the hash values plus the (a, b) seed.
  std::size_t bit_length() const {
    std::size_t range_bits = 0;
    while ((std::uint64_t{1} << range_bits) < range) ++range_bits;
    std::size_t q_bits = 0;
    while ((std::uint64_t{1} << q_bits) <= q) ++q_bits;
    return values.size() * range_bits + 2 * q_bits;
  }
};

/// f must be a length-n string with exactly one 1 in each sqrt(n)-block.
inline RegevEncoding regev_encode(const BitString& f, std::uint64_t n,
                                  std::uint32_t range, Rng& rng) {
  if (f.size() != n) throw std::invalid_argument("regev_encode: |f| != n");
  if (range < 2) throw std::invalid_argument("regev_encode: range >= 2");
  const auto root64 = static_cast<std::uint64_t>(
      std::llround(std::sqrt(static_cast<double>(n))));
  if (root64 * root64 != n || root64 == 0)
    throw std::invalid_argument("regev_encode: n must be a perfect square");
  const std::uint32_t root = static_cast<std::uint32_t>(root64);

  RegevEncoding enc;
  enc.n = n;
  enc.root = root;
  enc.range = range;
  enc.q = next_prime_at_least(root);
  enc.a = rng.below(enc.q);
  enc.b = rng.below(enc.q);
  enc.values.resize(root);
  for (std::uint32_t blk = 0; blk < root; ++blk) {
    std::uint32_t ones = 0, pos = 0;
    for (std::uint32_t i = 0; i < root; ++i) {
      if (f.get(std::size_t{blk} * root + i)) {
        ++ones;
        pos = i;
      }
    }
    if (ones != 1)
      throw std::invalid_argument(
          "regev_encode: block " + std::to_string(blk) +
          " does not have exactly one 1");
    enc.values[blk] = enc.hash(pos);
  }
  return enc;
}

/// 1 iff the queried position hashes to its block's stored value. Always
/// right on the true 1-positions; wrong on a 0-position only under a hash
/// collision (about 1/range of the time).
inline int regev_decode(const RegevEncoding& enc, std::uint64_t position) {
  if (position >= enc.n)
    throw std::out_of_range("regev_decode: position out of range");
  const std::uint32_t blk = static_cast<std::uint32_t>(position / enc.root);
  const std::uint32_t within = static_cast<std::uint32_t>(position % enc.root);
  return enc.hash(within) == enc.values[blk] ? 1 : 0;
}

// ---------------------------------------------------------------------------
// The average-case counterexample
// ---------------------------------------------------------------------------

struct AvgCaseRacResult {
  std::uint64_t n = 0;
  std::uint64_t weight = 0;        // ceil(2n/3)
  Rational exact_success{0};       // weight / n, the constant-1 decoder
  double measured = 0;
  int worst_case_success = 0;      // 0 whenever any 0-position exists
};

/// The zero-bit code for heavy strings: on f of weight ceil(2n/3) the
/// decoder that always answers 1 is right on a uniform position with
/// probability exactly weight/n >= 2/3, yet its worst-case success is 0 -
/// the average-case/worst-case gap, exhibited.
inline AvgCaseRacResult avgcase_counterexample(std::uint64_t n,
                                               std::uint64_t trials,
                                               Rng& rng) {
  if (n < 3) throw std::invalid_argument("avgcase_counterexample: n >= 3");
  AvgCaseRacResult res;
  res.n = n;
  res.weight = (2 * n + 2) / 3;  // ceil(2n/3)
  BitString f(n);
  for (std::uint64_t i = 0; i < res.weight; ++i) f.set(i, 1);
  res.exact_success = Rational(static_cast<std::int64_t>(res.weight),
                               static_cast<std::int64_t>(n));
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t i = rng.below(n);
    hits += f.get(i);  // decoder always answers 1
  }
  res.measured =
      trials == 0 ? 0.0
                  : static_cast<double>(hits) / static_cast<double>(trials);
  res.worst_case_success = res.weight == n ? 1 : 0;
  return res;
}

}  // namespace trex

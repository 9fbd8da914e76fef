#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "trex/bitstring.hpp"
#include "trex/rational.hpp"

namespace trex {

namespace detail {
inline double prob_abs(double x) { return x < 0 ? -x : x; }
inline Rational prob_abs(const Rational& x) { return x.abs(); }
inline double prob_to_double(double x) { return x; }
inline double prob_to_double(const Rational& x) { return x.to_double(); }
inline bool sums_to_one(double total) { return std::fabs(total - 1.0) <= 1e-12; }
inline bool sums_to_one(const Rational& total) { return total == Rational(1); }
}  // namespace detail

// Explicit finite distribution over bit strings. P is the probability type:
// Rational where masses come from counting (the brute-force verifiers need
// exact distances), double elsewhere.
template <typename P>
class FiniteDist {
 public:
  FiniteDist(std::vector<std::pair<BitString, P>> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty())
      throw std::invalid_argument("distribution with empty support");
    const std::size_t len = entries_[0].first.size();
    P total{};
    std::map<BitString, bool> seen;
    for (const auto& [outcome, p] : entries_) {
      if (outcome.size() != len)
        throw std::invalid_argument("outcomes of unequal length");
      if (p < P{} ) throw std::invalid_argument("negative probability");
      if (seen.count(outcome))
        throw std::invalid_argument("duplicate outcome");
      seen[outcome] = true;
      total += p;
    }
    if (!detail::sums_to_one(total))
      throw std::invalid_argument("probabilities do not sum to 1");
  }

  static FiniteDist point_mass(const BitString& outcome) {
    return FiniteDist({{outcome, P{1}}});
  }

  static FiniteDist uniform(const std::vector<BitString>& outcomes) {
    if (outcomes.empty())
      throw std::invalid_argument("uniform over empty set");
    std::vector<std::pair<BitString, P>> entries;
    entries.reserve(outcomes.size());
    const P w = weight_over(outcomes.size());
    for (const auto& o : outcomes) entries.emplace_back(o, w);
    return FiniteDist(std::move(entries));
  }

  /// Uniform distribution on all length-len strings; len is capped so the
  /// support stays explicitly enumerable.
  static FiniteDist uniform_all(std::size_t len) {
    if (len > 24) throw std::invalid_argument("uniform_all: support too big");
    std::vector<BitString> outcomes;
    outcomes.reserve(std::size_t{1} << len);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
      outcomes.push_back(BitString::from_uint(v, len));
    return uniform(outcomes);
  }

  const std::vector<std::pair<BitString, P>>& entries() const {
    return entries_;
  }
  std::size_t outcome_len() const { return entries_[0].first.size(); }

  P max_prob() const {
    P best = entries_[0].second;
    for (const auto& [o, p] : entries_)
      if (best < p) best = p;
    return best;
  }

 private:
  static P weight_over(std::size_t count) {
    if constexpr (std::is_same_v<P, Rational>) {
      return Rational(1, static_cast<std::int64_t>(count));
    } else {
      return 1.0 / static_cast<double>(count);
    }
  }

  std::vector<std::pair<BitString, P>> entries_;
};

using DistD = FiniteDist<double>;
using DistQ = FiniteDist<Rational>;

/// Variational distance (1/2) sum |d1(a) - d2(a)| over the support union.
template <typename P>
P stat_distance(const FiniteDist<P>& d1, const FiniteDist<P>& d2) {
  if (d1.outcome_len() != d2.outcome_len())
    throw std::invalid_argument("stat_distance: outcome length mismatch");
  std::map<BitString, std::pair<P, P>> merged;
  for (const auto& [o, p] : d1.entries()) merged[o].first += p;
  for (const auto& [o, p] : d2.entries()) merged[o].second += p;
  P total{};
  for (const auto& [o, pq] : merged)
    total += detail::prob_abs(pq.first - pq.second);
  if constexpr (std::is_same_v<P, Rational>) {
    return total * Rational(1, 2);
  } else {
    return total / 2.0;
  }
}

/// Min-entropy -log2(max_a d(a)).
template <typename P>
double min_entropy(const FiniteDist<P>& d) {
  if constexpr (std::is_same_v<P, Rational>) {
    const Rational m = d.max_prob();
    return std::log2(static_cast<double>(m.den())) -
           std::log2(static_cast<double>(m.num()));
  } else {
    return -std::log2(d.max_prob());
  }
}

/// True iff the min-entropy of d is at least k. Any such distribution is a
/// convex combination of flat sources with min-entropy >= floor(k), which is
/// why module verify only ever sweeps flat sources.
template <typename P>
bool flat_decompose_check(const FiniteDist<P>& d, double k) {
  return min_entropy(d) >= k - 1e-12;
}

// Flat source: uniform over an explicit support of equal-length strings.
// Min-entropy is exactly log2(|support|).
class FlatSource {
 public:
  FlatSource(std::vector<BitString> support) : support_(std::move(support)) {
    if (support_.empty())
      throw std::invalid_argument("flat source with empty support");
    const std::size_t len = support_[0].size();
    for (const auto& s : support_)
      if (s.size() != len)
        throw std::invalid_argument("flat source with unequal lengths");
    std::sort(support_.begin(), support_.end());
    for (std::size_t i = 1; i < support_.size(); ++i)
      if (support_[i] == support_[i - 1])
        throw std::invalid_argument("flat source with duplicate outcome");
  }

  const std::vector<BitString>& support() const { return support_; }
  std::size_t n() const { return support_[0].size(); }
  double min_entropy() const {
    return std::log2(static_cast<double>(support_.size()));
  }
  DistQ dist() const { return DistQ::uniform(support_); }

 private:
  std::vector<BitString> support_;
};

}  // namespace trex

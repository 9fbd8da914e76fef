#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

#include "trex/bitstring.hpp"
#include "trex/code.hpp"
#include "trex/design.hpp"

namespace trex {

// Everything needed to run the extractor: the code for one source bit-count
// n, the design that slices one seed into m codeword positions, and the
// bookkeeping (k, b, eps) the planner derived them from.
struct ExtractorParams {
  std::uint64_t n = 0;
  std::uint64_t k = 0;       // min-entropy target (0 when built directly)
  std::uint64_t b = 0;       // storage bound (0 when built directly)
  double eps = 0;
  std::uint32_t m = 0;
  std::uint32_t c_exponent = 15;
  DesignFamily design;
  CodeParams code;
  std::uint32_t t = 0;       // seed length, = design.t
};

/// Design intersection bound used throughout: ceil(log2 m), clamped to >= 1
/// (a one-set family has no pairwise constraint, but the design type wants
/// r >= 1). Each restricted table in the reconstruction advice then has
/// <= 2^r <= 2m entries.
inline std::uint32_t design_r_for(std::uint32_t m) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < m) ++r;
  return r < 1 ? 1 : r;
}

/// Extractor parameters from explicit (n, m, eps): the code runs at radius
/// delta = eps/(2m), and the design indexes its codeword positions.
inline ExtractorParams make_extractor_params(std::uint64_t n, std::uint32_t m,
                                             double eps,
                                             double c_field = 1.0) {
  if (m < 1) throw std::invalid_argument("extractor needs m >= 1");
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("extractor needs 0 < eps < 1");
  ExtractorParams p;
  p.n = n;
  p.eps = eps;
  p.m = m;
  const double delta = eps / (2.0 * m);
  p.code = code_params(n, delta, c_field);
  p.design = make_design(m, p.code.log2_nbar, design_r_for(m));
  p.t = p.design.t;
  return p;
}

struct InfeasibilityReport {
  double m_tilde = 0;  // the formula's value before flooring
  std::string reason;
};

using PlanResult = std::variant<ExtractorParams, InfeasibilityReport>;

/// Output-length planner: m = floor(mult * (eps/log2 n) * (k/b)^(1/c)).
/// The asymptotic formula often yields m < 1 at desk scale; that is an
/// explicit infeasibility report, not an error.
inline PlanResult plan_params(std::uint64_t n, std::uint64_t k,
                              std::uint64_t b, double eps,
                              std::uint32_t c_exponent = 15,
                              double multiplier = 1.0,
                              double c_field = 1.0) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("plan_params: need 0 < eps < 1");
  if (b < 1 || b > k || k > n)
    throw std::invalid_argument("plan_params: need 0 < b <= k <= n");
  if (n < 2)
    throw std::invalid_argument("plan_params: need n >= 2 (log2 n > 0)");
  if (c_exponent < 1)
    throw std::invalid_argument("plan_params: need c_exponent >= 1");

  const double m_tilde =
      multiplier * (eps / std::log2(static_cast<double>(n))) *
      std::pow(static_cast<double>(k) / static_cast<double>(b),
               1.0 / static_cast<double>(c_exponent));
  if (m_tilde < 1.0) {
    InfeasibilityReport rep;
    rep.m_tilde = m_tilde;
    rep.reason =
        "output-length formula gives m~ = " + std::to_string(m_tilde) +
        " < 1 at these parameters; no output bit is certified at this scale";
    return rep;
  }
  ExtractorParams p = make_extractor_params(
      n, static_cast<std::uint32_t>(m_tilde), eps, c_field);
  p.k = k;
  p.b = b;
  p.c_exponent = c_exponent;
  return p;
}

/// The l-bit seed slice for output bit i, read as a codeword position
/// (bit 0 of the slice = least significant bit of the index).
inline std::uint64_t seed_slice_index(const BitString& y,
                                      const DesignFamily& d, std::uint32_t i) {
  if (d.l > 63)
    throw std::invalid_argument("design set size > 63 bits per position");
  return slice_seed(y, d.sets[i], d.t).to_uint();
}

/// NW generator against an arbitrary bit oracle g over [nbar]:
/// output bit i = g(index(y|_{S_i})).
inline BitString nw_generate(const std::function<int(std::uint64_t)>& g,
                             const BitString& y, const DesignFamily& d) {
  if (y.size() != d.t)
    throw std::invalid_argument("nw_generate: seed length != t");
  BitString out(d.sets.size());
  for (std::uint32_t i = 0; i < d.sets.size(); ++i)
    out.set(i, g(seed_slice_index(y, d, i)));
  return out;
}

/// The extractor: NW run on the encoded source, TR(f, y) = NW^{C(f)}(y).
inline BitString extract(const BitString& f, const BitString& y,
                         const ExtractorParams& p) {
  if (f.size() != p.n)
    throw std::invalid_argument("extract: source length != n");
  if (y.size() != p.t)
    throw std::invalid_argument("extract: seed length != t");
  BitString out(p.m);
  for (std::uint32_t i = 0; i < p.m; ++i)
    out.set(i, encode_bit(f, p.code, seed_slice_index(y, p.design, i)));
  return out;
}

/// Pairwise-independent baseline: Toeplitz hash, output_i = sum_j
/// seed_{i+j} x_j mod 2 with a seed of n+m-1 bits.
inline BitString leftover_hash(const BitString& x, const BitString& seed,
                               std::uint32_t m) {
  if (seed.size() != x.size() + m - 1)
    throw std::invalid_argument("leftover_hash: seed length != n+m-1");
  BitString out(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    int acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc ^= seed.get(i + j) & x.get(j);
    out.set(i, acc);
  }
  return out;
}

/// One-bit baseline: sample position i, output x_i.
inline int bit_select(const BitString& x, std::size_t i) { return x.get(i); }

}  // namespace trex

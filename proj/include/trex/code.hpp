#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trex/bitstring.hpp"
#include "trex/gf2e.hpp"
#include "trex/util.hpp"

namespace trex {

// Binary code: Reed-Muller low-degree extension over GF(2^s), concatenated
// with a Hadamard inner code over the s-bit field representation. A message
// f of n bits is viewed as a function on the subcube H^d (H = first h field
// elements, zero-padded beyond n), extended to the unique polynomial of
// degree <= h-1 per variable, and each codeword bit is one mask of one
// evaluation: <bits(LDE(f)(point)), mask>.
struct CodeParams {
  std::uint64_t n = 0;
  double delta = 0;
  int s = 0;
  std::uint32_t d = 0;
  std::uint32_t h = 0;
  std::uint32_t degree = 0;        // total degree bound d*(h-1)
  std::uint32_t log2_nbar = 0;     // s*(d+1)
  std::uint64_t nbar = 0;          // 2^log2_nbar, or 0 when it exceeds 63 bits
  FieldCtx ctx = FieldCtx::standard(1);
  // Lagrange denominators over the cube nodes 0..h-1:
  // invden[c] = (prod_{c' != c} (c xor c'))^{-1}.
  std::vector<std::uint32_t> invden;
};

/// Smallest (nbar-minimal) parameter tuple for n message bits at radius
/// Assemble a CodeParams for an explicitly chosen (s, d, h): derived
/// quantities, the standard field context, and the cached Lagrange
/// denominator inverses 1 / prod_{c2 != c} (c - c2). Deterministic, so a
/// parameter set serialized by one process rebuilds identically in another.
inline CodeParams code_params_from(std::uint64_t n, double delta, int s,
                                   std::uint32_t d, std::uint32_t h) {
  if (d < 1 || h < 2) throw std::invalid_argument("code_params_from: d, h");
  CodeParams p;
  p.n = n;
  p.delta = delta;
  p.s = s;
  p.d = d;
  p.h = h;
  p.degree = d * (h - 1);
  p.log2_nbar = static_cast<std::uint32_t>(s) * (d + 1);
  p.nbar = p.log2_nbar <= 63 ? (std::uint64_t{1} << p.log2_nbar) : 0;
  if (h > (std::uint64_t{1} << s))
    throw std::invalid_argument("code_params_from: cube side exceeds field");
  p.ctx = FieldCtx::standard(s);
  p.invden.resize(h);
  for (std::uint32_t c = 0; c < h; ++c) {
    std::uint32_t prod = 1;
    for (std::uint32_t c2 = 0; c2 < h; ++c2)
      if (c2 != c) prod = p.ctx.mul(prod, c ^ c2);
    p.invden[c] = p.ctx.inv(prod);
  }
  return p;
}

/// Pick the smallest concatenated code C(f): RM over GF(2^s) x Hadamard for
/// delta, searching d ascending with the minimal admissible s for each d.
/// Constraints per tuple:
///   h^d >= n,   2^s > degree,   2^s >= c_field * log2(n)^2 / delta^5,
///   4*delta^2 * 2^s > degree  (keeps the documented list-size curve
///                              L(delta) = (1-rho)/(4 delta^2 - rho) finite,
///                              rho = degree/2^s).
/// Throws when no s <= 16 satisfies them.
inline CodeParams code_params(std::uint64_t n, double delta,
                              double c_field = 1.0) {
  if (n < 1) throw std::invalid_argument("code_params: n must be >= 1");
  if (!(delta > 0.0) || delta > 0.5)
    throw std::invalid_argument("code_params: delta must be in (0, 1/2]");
  if (c_field < 0.0)
    throw std::invalid_argument("code_params: c_field must be >= 0");

  const double log2n = n == 1 ? 0.0 : std::log2(static_cast<double>(n));
  const double field_floor =
      c_field * log2n * log2n / std::pow(delta, 5.0);

  bool found = false;
  std::uint32_t best_d = 0, best_h = 0, best_log2 = 0;
  int best_s = 0;

  // d beyond log2(n)+1 cannot help: h=2 already covers n at d = ceil(log2 n).
  const std::uint32_t d_max =
      static_cast<std::uint32_t>(std::ceil(log2n)) + 1;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    const std::uint32_t h = ceil_root(n, d);
    const std::uint32_t degree = d * (h - 1);
    int s = 0;
    for (int cand = 1; cand <= 16; ++cand) {
      const double order = std::pow(2.0, cand);
      if (order <= degree) continue;
      if (order < field_floor) continue;
      if (4.0 * delta * delta * order <= degree) continue;
      s = cand;
      break;
    }
    if (s == 0) continue;
    const std::uint32_t log2_nbar = static_cast<std::uint32_t>(s) * (d + 1);
    if (!found || log2_nbar < best_log2) {
      found = true;
      best_d = d;
      best_h = h;
      best_s = s;
      best_log2 = log2_nbar;
    }
  }
  if (!found)
    throw std::runtime_error(
        "code_params: no field degree s <= 16 satisfies the constraints for "
        "these (n, delta, c_field)");
  return code_params_from(n, delta, best_s, best_d, best_h);
}

// One codeword bit address: an RM evaluation point plus a Hadamard mask.
struct CodeIndex {
  std::vector<std::uint32_t> point;  // d field values
  std::uint32_t mask = 0;            // s-bit Hadamard mask
};

/// j -> (point, mask): mask is the low s bits, coordinate L sits at bits
/// [s*(L+1), s*(L+2)). Bijective with [0, nbar).
inline CodeIndex unpack_index(const CodeParams& p, std::uint64_t j) {
  if (p.log2_nbar <= 63 && j >= (std::uint64_t{1} << p.log2_nbar))
    throw std::out_of_range("codeword index out of range");
  const std::uint64_t field_mask = (std::uint64_t{1} << p.s) - 1;
  CodeIndex idx;
  idx.mask = static_cast<std::uint32_t>(j & field_mask);
  idx.point.resize(p.d);
  for (std::uint32_t L = 0; L < p.d; ++L)
    idx.point[L] = static_cast<std::uint32_t>(
        (j >> (static_cast<std::uint64_t>(p.s) * (L + 1))) & field_mask);
  return idx;
}

inline std::uint64_t pack_index(const CodeParams& p, const CodeIndex& idx) {
  std::uint64_t j = idx.mask;
  for (std::uint32_t L = 0; L < p.d; ++L)
    j |= static_cast<std::uint64_t>(idx.point[L])
         << (static_cast<std::uint64_t>(p.s) * (L + 1));
  return j;
}

namespace detail {

/// Per-variable Lagrange basis values at x: out[c] = L_c(x) for the nodes
/// 0..h-1, via prefix/suffix products (no division by zero on the cube).
inline void lagrange_basis_at(const CodeParams& p, std::uint32_t x,
                              std::vector<std::uint32_t>& out) {
  const std::uint32_t h = p.h;
  out.resize(h);
  if (h == 1) {
    out[0] = 1;
    return;
  }
  std::vector<std::uint32_t> pre(h), suf(h);
  pre[0] = 1;
  for (std::uint32_t c = 1; c < h; ++c)
    pre[c] = p.ctx.mul(pre[c - 1], x ^ (c - 1));
  suf[h - 1] = 1;
  for (std::uint32_t c = h - 1; c-- > 0;)
    suf[c] = p.ctx.mul(suf[c + 1], x ^ (c + 1));
  for (std::uint32_t c = 0; c < h; ++c)
    out[c] = p.ctx.mul(p.ctx.mul(pre[c], suf[c]), p.invden[c]);
}

}  // namespace detail

/// Low-degree extension of f at `point` (raw field values). Tensor form:
/// sum over set message bits i of prod_L basis_L[digit_L(i)], where i's
/// base-h digits are its cube coordinates.
inline std::uint32_t lde_eval_raw(const BitString& f, const CodeParams& p,
                                  const std::vector<std::uint32_t>& point) {
  if (f.size() != p.n)
    throw std::invalid_argument("lde_eval: message length != n");
  if (point.size() != p.d)
    throw std::invalid_argument("lde_eval: point arity != d");
  std::vector<std::vector<std::uint32_t>> basis(p.d);
  for (std::uint32_t L = 0; L < p.d; ++L) {
    if (point[L] >= p.ctx.order())
      throw std::invalid_argument("lde_eval: coordinate >= 2^s");
    detail::lagrange_basis_at(p, point[L], basis[L]);
  }
  std::uint32_t acc = 0;
  for (std::uint64_t i = 0; i < p.n; ++i) {
    if (!f.get(i)) continue;
    std::uint32_t term = 1;
    std::uint64_t rest = i;
    for (std::uint32_t L = 0; L < p.d; ++L) {
      term = p.ctx.mul(term, basis[L][rest % p.h]);
      rest /= p.h;
    }
    acc ^= term;
  }
  return acc;
}

inline FieldElement lde_eval(const BitString& f, const CodeParams& p,
                             const std::vector<FieldElement>& point) {
  std::vector<std::uint32_t> raw;
  raw.reserve(point.size());
  for (const auto& c : point) {
    if (c.ctx() != p.ctx)
      throw std::invalid_argument("lde_eval: point from a different field");
    raw.push_back(c.value());
  }
  return FieldElement(p.ctx, lde_eval_raw(f, p, raw));
}

/// Codeword bit j: Hadamard mask applied to the s-bit LDE value.
inline int encode_bit(const BitString& f, const CodeParams& p,
                      std::uint64_t j) {
  const CodeIndex idx = unpack_index(p, j);
  const std::uint32_t v = lde_eval_raw(f, p, idx.point);
  return parity64(static_cast<std::uint64_t>(v) & idx.mask);
}

/// Exact minimum codeword weight over all nonzero messages (n <= 20). The
/// code is GF(2)-linear in the message, so min distance = min weight, and a
/// codeword's weight is 2^(s-1) times its count of nonzero LDE values (each
/// nonzero field value has a perfectly balanced Hadamard block). A Gray-code
/// walk maintains the LDE values at every RM point across messages.
inline std::uint64_t min_weight_exact(const CodeParams& p) {
  if (p.n > 20)
    throw std::invalid_argument("min_weight_exact: message space above 2^20");
  const std::uint64_t points = std::uint64_t{1} << (p.s * p.d);
  const std::uint32_t order = p.ctx.order();

  // eval[i][pt]: contribution of message bit i to the LDE value at point pt.
  std::vector<std::vector<std::uint32_t>> basis(p.d);
  std::vector<std::vector<std::uint32_t>> eval(
      p.n, std::vector<std::uint32_t>(points));
  for (std::uint64_t pt = 0; pt < points; ++pt) {
    std::uint64_t rest = pt;
    for (std::uint32_t L = 0; L < p.d; ++L) {
      detail::lagrange_basis_at(
          p, static_cast<std::uint32_t>(rest & (order - 1)), basis[L]);
      rest >>= p.s;
    }
    for (std::uint64_t i = 0; i < p.n; ++i) {
      std::uint32_t term = 1;
      std::uint64_t digits = i;
      for (std::uint32_t L = 0; L < p.d; ++L) {
        term = p.ctx.mul(term, basis[L][digits % p.h]);
        digits /= p.h;
      }
      eval[i][pt] = term;
    }
  }

  std::vector<std::uint32_t> vals(points, 0);
  std::uint64_t nonzero = 0;
  std::uint64_t best = UINT64_MAX;
  const std::uint64_t total_msgs = std::uint64_t{1} << p.n;
  std::uint64_t gray = 0;
  for (std::uint64_t gidx = 1; gidx < total_msgs; ++gidx) {
    const std::uint32_t flip =
        static_cast<std::uint32_t>(__builtin_ctzll(gidx));
    gray ^= std::uint64_t{1} << flip;
    for (std::uint64_t pt = 0; pt < points; ++pt) {
      const std::uint32_t before = vals[pt];
      vals[pt] ^= eval[flip][pt];
      if (before == 0 && vals[pt] != 0)
        ++nonzero;
      else if (before != 0 && vals[pt] == 0)
        --nonzero;
    }
    const std::uint64_t weight = nonzero << (p.s - 1);
    if (weight < best) best = weight;
  }
  return best;
}

inline constexpr std::uint64_t kEncodeAllLimit = std::uint64_t{1} << 26;

/// Full codeword, desk scale only. One LDE evaluation is shared by all 2^s
/// masks of a point.
inline BitString encode_all(const BitString& f, const CodeParams& p,
                            std::uint64_t limit = kEncodeAllLimit) {
  if (p.log2_nbar > 63 || p.nbar > limit)
    throw std::invalid_argument(
        "encode_all: nbar = 2^" + std::to_string(p.log2_nbar) +
        " exceeds the materialization limit " + std::to_string(limit));
  BitString out(p.nbar);
  const std::uint64_t points = std::uint64_t{1} << (p.s * p.d);
  const std::uint32_t order = p.ctx.order();
  std::vector<std::uint32_t> point(p.d);
  for (std::uint64_t pi = 0; pi < points; ++pi) {
    std::uint64_t rest = pi;
    for (std::uint32_t L = 0; L < p.d; ++L) {
      point[L] = static_cast<std::uint32_t>(rest & (order - 1));
      rest >>= p.s;
    }
    const std::uint32_t v = lde_eval_raw(f, p, point);
    const std::uint64_t base = pi << p.s;
    for (std::uint32_t mask = 0; mask < order; ++mask)
      if (parity64(static_cast<std::uint64_t>(v) & mask))
        out.set(base + mask, 1);
  }
  return out;
}

}  // namespace trex

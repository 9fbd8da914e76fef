#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trex {

namespace gf2 {

/// Degree of a GF(2) polynomial given as a bit mask (-1 for the zero poly).
inline int poly_degree(std::uint32_t p) {
  return p == 0 ? -1 : 31 - __builtin_clz(p);
}

/// Carry-less product of two GF(2) polynomials.
inline std::uint64_t poly_mul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0;
  std::uint64_t shifted = a;
  while (b != 0) {
    if (b & 1) acc ^= shifted;
    shifted <<= 1;
    b >>= 1;
  }
  return acc;
}

/// Remainder of a mod m over GF(2); m != 0.
inline std::uint32_t poly_mod(std::uint64_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  while (a >> dm != 0) {
    const int da = 63 - __builtin_clzll(a);
    a ^= static_cast<std::uint64_t>(m) << (da - dm);
  }
  return static_cast<std::uint32_t>(a);
}

/// Irreducibility over GF(2) by trial division; plenty fast for degree <= 16.
inline bool poly_irreducible(std::uint32_t p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((p & 1) == 0) return false;  // divisible by x
  for (std::uint32_t f = 2; poly_degree(f) <= d / 2; ++f) {
    if (poly_mod(p, f) == 0) return false;
  }
  return true;
}

}  // namespace gf2

// Binary extension field GF(2^s), 1 <= s <= 16. Elements are s-bit residues
// of GF(2)[x] modulo an irreducible degree-s polynomial.
class FieldCtx {
 public:
  FieldCtx(int s, std::uint32_t modulus) : s_(s), modulus_(modulus) {
    if (s < 1 || s > 16)
      throw std::invalid_argument("field degree s must be in [1, 16]");
    if (gf2::poly_degree(modulus) != s)
      throw std::invalid_argument("modulus degree does not match s");
    if (!gf2::poly_irreducible(modulus))
      throw std::invalid_argument("modulus is reducible");
  }

  /// Context with the numerically smallest irreducible degree-s modulus;
  /// this is the table `trex field-table` prints.
  static FieldCtx standard(int s) {
    return FieldCtx(s, smallest_irreducible(s));
  }

  static std::uint32_t smallest_irreducible(int s) {
    if (s < 1 || s > 16)
      throw std::invalid_argument("field degree s must be in [1, 16]");
    for (std::uint32_t p = std::uint32_t{1} << s;
         p < (std::uint32_t{1} << (s + 1)); ++p) {
      if (gf2::poly_irreducible(p)) return p;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
  }

  int s() const { return s_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << s_; }

  // Raw value arithmetic; the FieldElement wrapper adds context checks.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return gf2::poly_mod(gf2::poly_mul(a, b), modulus_);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t acc = 1;
    while (e != 0) {
      if (e & 1) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  /// Multiplicative inverse as a^(2^s - 2); a != 0.
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    return pow(a, order() - 2);
  }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.s_ == b.s_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const FieldCtx& a, const FieldCtx& b) {
    return !(a == b);
  }

 private:
  int s_;
  std::uint32_t modulus_;
};

class FieldElement {
 public:
  FieldElement(const FieldCtx& ctx, std::uint32_t value)
      : ctx_(&ctx), value_(value) {
    if (value >= ctx.order())
      throw std::invalid_argument("field element value >= 2^s");
  }

  const FieldCtx& ctx() const { return *ctx_; }
  std::uint32_t value() const { return value_; }

 private:
  const FieldCtx* ctx_;
  std::uint32_t value_;
};

namespace detail {
inline void require_same_ctx(const FieldElement& a, const FieldElement& b) {
  if (a.ctx() != b.ctx())
    throw std::invalid_argument("field elements from different contexts");
}
}  // namespace detail

inline FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  detail::require_same_ctx(a, b);
  return FieldElement(a.ctx(), a.ctx().add(a.value(), b.value()));
}

inline FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  detail::require_same_ctx(a, b);
  return FieldElement(a.ctx(), a.ctx().mul(a.value(), b.value()));
}

inline FieldElement fe_inv(const FieldElement& a) {
  return FieldElement(a.ctx(), a.ctx().inv(a.value()));
}

/// Evaluate at `at` the unique degree-(points.size()-1) polynomial through
/// the given (x, y) points. X-coordinates must be pairwise distinct.
inline FieldElement lagrange_interp_eval(
    const std::vector<std::pair<FieldElement, FieldElement>>& points,
    const FieldElement& at) {
  if (points.empty())
    throw std::invalid_argument("interpolation through zero points");
  const FieldCtx& F = at.ctx();
  for (const auto& [x, y] : points) {
    detail::require_same_ctx(x, at);
    detail::require_same_ctx(y, at);
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first.value() == points[j].first.value())
        throw std::invalid_argument("duplicate interpolation x-coordinate");

  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::uint32_t num = 1;
    std::uint32_t den = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      num = F.mul(num, F.add(at.value(), points[j].first.value()));
      den = F.mul(den,
                  F.add(points[i].first.value(), points[j].first.value()));
    }
    acc = F.add(acc, F.mul(points[i].second.value(), F.mul(num, F.inv(den))));
  }
  return FieldElement(F, acc);
}

}  // namespace trex

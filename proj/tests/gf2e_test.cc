// GF(2^s) arithmetic against independent oracles: a bit-by-bit polynomial
// multiplier for exhaustive small-field tables, and sampled field-axiom
// checks for every supported degree.

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include <trex/gf2e.hpp>
#include <trex/rng.hpp>

namespace trex {
namespace {

// Schoolbook oracle: multiply two field elements by accumulating b's bits as
// shifted copies of a, reducing one overflow bit at a time. Written straight
// from the field definition, sharing no code with FieldCtx::mul.
std::uint32_t naive_mul(int s, std::uint32_t modulus, std::uint32_t a,
                        std::uint32_t b) {
  std::uint32_t acc = 0;
  for (int i = s - 1; i >= 0; --i) {
    // acc <- acc * x, reduced.
    acc <<= 1;
    if (acc >> s) acc ^= modulus;
    if ((b >> i) & 1) acc ^= a;
  }
  return acc;
}

TEST(PolyOps, DegreeMulMod) {
  EXPECT_EQ(gf2::poly_degree(0), -1);
  EXPECT_EQ(gf2::poly_degree(1), 0);
  EXPECT_EQ(gf2::poly_degree(0b1011), 3);
  // (x+1)(x+1) = x^2 + 1 over GF(2).
  EXPECT_EQ(gf2::poly_mul(0b11, 0b11), 0b101u);
  // (x^2+x) mod (x+1): x^2+x = (x+1)x, remainder 0.
  EXPECT_EQ(gf2::poly_mod(0b110, 0b11), 0u);
  EXPECT_EQ(gf2::poly_mod(0b101, 0b11), 0u);
  EXPECT_EQ(gf2::poly_mod(0b100, 0b11), 1u);
}

TEST(PolyOps, IrreducibilityMatchesKnownLists) {
  // Degree 2: x^2+x+1 is the only irreducible.
  EXPECT_TRUE(gf2::poly_irreducible(0b111));
  EXPECT_FALSE(gf2::poly_irreducible(0b101));  // (x+1)^2
  EXPECT_FALSE(gf2::poly_irreducible(0b110));  // x(x+1)
  // Degree 3 irreducibles: x^3+x+1 and x^3+x^2+1.
  EXPECT_TRUE(gf2::poly_irreducible(0b1011));
  EXPECT_TRUE(gf2::poly_irreducible(0b1101));
  EXPECT_FALSE(gf2::poly_irreducible(0b1001));  // (x+1)(x^2+x+1)
  // Degree 8: the AES modulus x^8+x^4+x^3+x+1.
  EXPECT_TRUE(gf2::poly_irreducible(0b100011011));
  EXPECT_FALSE(gf2::poly_irreducible(0b100011010));
}

TEST(FieldCtx, StandardModuliAreTheSmallest) {
  // First few numerically smallest irreducible polynomials per degree.
  EXPECT_EQ(FieldCtx::smallest_irreducible(1), 0b10u);
  EXPECT_EQ(FieldCtx::smallest_irreducible(2), 0b111u);
  EXPECT_EQ(FieldCtx::smallest_irreducible(3), 0b1011u);
  EXPECT_EQ(FieldCtx::smallest_irreducible(4), 0b10011u);
  EXPECT_EQ(FieldCtx::smallest_irreducible(8), 0b100011011u);
  for (int s = 1; s <= 16; ++s) {
    const auto m = FieldCtx::smallest_irreducible(s);
    EXPECT_EQ(gf2::poly_degree(m), s);
    EXPECT_TRUE(gf2::poly_irreducible(m));
  }
}

TEST(FieldCtx, RejectsBadModuli) {
  EXPECT_THROW(FieldCtx(3, 0b111), std::invalid_argument);   // degree 2
  EXPECT_THROW(FieldCtx(3, 0b1001), std::invalid_argument);  // reducible
  EXPECT_THROW(FieldCtx(0, 0b1), std::invalid_argument);
  EXPECT_THROW(FieldCtx(17, 0b1), std::invalid_argument);
}

TEST(FieldCtx, ExhaustiveTableEquivalenceUpToS4) {
  for (int s = 1; s <= 4; ++s) {
    const auto F = FieldCtx::standard(s);
    const std::uint32_t q = F.order();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(F.mul(a, b), naive_mul(s, F.modulus(), a, b))
            << "s=" << s << " a=" << a << " b=" << b;
        EXPECT_EQ(F.add(a, b), a ^ b);
      }
    }
  }
}

TEST(FieldCtx, SampledAxiomsEveryDegree) {
  for (int s = 1; s <= 16; ++s) {
    const auto F = FieldCtx::standard(s);
    Rng rng(100 + s);
    const std::uint32_t q = F.order();
    for (int i = 0; i < 10000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng.below(q));
      const auto b = static_cast<std::uint32_t>(rng.below(q));
      const auto c = static_cast<std::uint32_t>(rng.below(q));
      ASSERT_EQ(F.mul(a, b), F.mul(b, a));
      ASSERT_EQ(F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c));
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      ASSERT_EQ(F.mul(a, 1), a);
      ASSERT_EQ(F.mul(a, 0), 0u);
      if (a != 0) {
        ASSERT_EQ(F.mul(a, F.inv(a)), 1u) << "s=" << s << " a=" << a;
      }
      ASSERT_EQ(F.mul(a, b), naive_mul(s, F.modulus(), a, b));
    }
  }
}

TEST(FieldCtx, PowAgreesWithRepeatedMultiplication) {
  const auto F = FieldCtx::standard(5);
  for (std::uint32_t a = 0; a < F.order(); ++a) {
    std::uint32_t acc = 1;
    for (std::uint64_t e = 0; e <= 40; ++e) {
      ASSERT_EQ(F.pow(a, e), acc);
      acc = F.mul(acc, a);
    }
    // Fermat: a^(2^s - 1) = 1 for a != 0.
    if (a != 0) EXPECT_EQ(F.pow(a, F.order() - 1), 1u);
  }
  EXPECT_THROW(F.inv(0), std::domain_error);
}

TEST(FieldElement, ContextDiscipline) {
  const auto F3 = FieldCtx::standard(3);
  const auto F4 = FieldCtx::standard(4);
  EXPECT_THROW(FieldElement(F3, 8), std::invalid_argument);
  const FieldElement a(F3, 5), b(F3, 3), c(F4, 5);
  EXPECT_EQ(fe_add(a, b).value(), 6u);
  EXPECT_EQ(fe_mul(a, fe_inv(a)).value(), 1u);
  EXPECT_THROW(fe_mul(a, c), std::invalid_argument);
  // Same (s, modulus) built separately compares equal: contexts are values.
  const FieldCtx F3b(3, 0b1011);
  EXPECT_NO_THROW(fe_add(a, FieldElement(F3b, 1)));
}

TEST(Lagrange, RecoversPolynomialValues) {
  const auto F = FieldCtx::standard(4);
  // p(x) = 3 x^2 + 5 x + 9, with field coefficients.
  auto poly = [&](std::uint32_t x) {
    return F.add(F.add(F.mul(3, F.mul(x, x)), F.mul(5, x)), 9);
  };
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  for (std::uint32_t x : {0u, 1u, 2u}) {
    pts.emplace_back(FieldElement(F, x), FieldElement(F, poly(x)));
  }
  for (std::uint32_t at = 0; at < F.order(); ++at) {
    EXPECT_EQ(
        lagrange_interp_eval(pts, FieldElement(F, at)).value(), poly(at));
  }
}

TEST(Lagrange, RejectsDuplicateNodes) {
  const auto F = FieldCtx::standard(3);
  std::vector<std::pair<FieldElement, FieldElement>> pts = {
      {FieldElement(F, 1), FieldElement(F, 2)},
      {FieldElement(F, 1), FieldElement(F, 3)}};
  EXPECT_THROW(lagrange_interp_eval(pts, FieldElement(F, 0)),
               std::invalid_argument);
  EXPECT_THROW(lagrange_interp_eval({}, FieldElement(F, 0)),
               std::invalid_argument);
}

}  // namespace
}  // namespace trex

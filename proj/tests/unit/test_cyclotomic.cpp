#include <gtest/gtest.h>

#include <random>

#include "kloo/cyclotomic.hpp"

using namespace kloo;

namespace {

CyclotomicInteger random_element(Int p, std::mt19937& rng, int spread = 4) {
  std::uniform_int_distribution<int> coeff(-spread, spread);
  CyclotomicInteger z(p);
  for (Int e = 0; e < p; ++e) z.add_zeta_power(e, coeff(rng));
  return z;
}

// sigma_a : zeta -> zeta^a
CyclotomicInteger conjugate(const CyclotomicInteger& z, Int a) {
  CyclotomicInteger out(z.p());
  for (std::size_t j = 0; j < z.coeffs().size(); ++j) out.add_zeta_power(static_cast<Int>(j) * a, z.coeffs()[j]);
  return out;
}

// ord_p of the absolute norm, which equals (p-1) times the valuation.
std::optional<Int> norm_order(const CyclotomicInteger& z) {
  if (z.is_zero()) return std::nullopt;
  CyclotomicInteger norm = CyclotomicInteger::constant(z.p(), 1);
  for (Int a = 1; a < z.p(); ++a) norm = norm * conjugate(z, a);
  for (std::size_t j = 1; j < norm.coeffs().size(); ++j) EXPECT_EQ(norm.coeffs()[j], 0);
  return p_adic_order(norm.coeffs()[0], z.p());
}

}  // namespace

TEST(Valuation, Examples) {
  for (Int p : {3, 5, 7, 11}) {
    EXPECT_EQ(pi_adic_valuation(CyclotomicInteger::constant(p, p)), Rational(1));
    EXPECT_EQ(pi_adic_valuation(CyclotomicInteger::constant(p, 1) - CyclotomicInteger::zeta_power(p, 1)),
              Rational(1, p - 1));
    EXPECT_EQ(pi_adic_valuation(CyclotomicInteger::constant(p, -1)), Rational(0));
    EXPECT_FALSE(pi_adic_valuation(CyclotomicInteger(p)));
  }
  EXPECT_EQ(pi_adic_valuation(CyclotomicInteger::zeta_power(3, 1) + CyclotomicInteger::zeta_power(3, 2)),
            Rational(0));
}

TEST(Arithmetic, ZetaPowersFoldAndMultiply) {
  for (Int p : {3, 5, 7}) {
    CyclotomicInteger all(p);
    for (Int e = 0; e < p; ++e) all.add_zeta_power(e, 1);
    EXPECT_TRUE(all.is_zero());
    for (Int a = -3; a < 2 * p; ++a)
      for (Int b = 0; b < p; ++b)
        EXPECT_EQ(CyclotomicInteger::zeta_power(p, a) * CyclotomicInteger::zeta_power(p, b),
                  CyclotomicInteger::zeta_power(p, a + b));
  }
}

TEST(Arithmetic, FromCountsAndExactDivision) {
  // N_0 = 3, N_1 = 1, N_2 = 1 over p = 3 gives 3 + zeta + zeta^2 = 2.
  EXPECT_EQ(CyclotomicInteger::from_counts(3, {3, 1, 1}), CyclotomicInteger::constant(3, 2));
  const auto z = CyclotomicInteger(5, {6, -3, 9, 0});
  EXPECT_EQ(z.divide_exact(3), CyclotomicInteger(5, {2, -1, 3, 0}));
  EXPECT_FALSE(z.divide_exact(2));
  EXPECT_THROW(CyclotomicInteger(3) + CyclotomicInteger(5), InvalidInput);
  EXPECT_THROW(CyclotomicInteger(3, {1, 2, 3}), InvalidInput);
}

TEST(Valuation, MatchesNormOrder) {
  std::mt19937 rng(99);
  for (Int p : {3, 5, 7}) {
    for (int trial = 0; trial < 60; ++trial) {
      auto z = random_element(p, rng);
      if (trial % 3 == 0) z = z * (CyclotomicInteger::constant(p, 1) - CyclotomicInteger::zeta_power(p, 1));
      if (trial % 5 == 0) z = z * BigInt(p * p);
      const auto v = pi_adic_valuation(z);
      const auto ord = norm_order(z);
      ASSERT_EQ(v.has_value(), ord.has_value());
      if (v) {
        EXPECT_EQ(*v * Rational(p - 1), Rational(*ord)) << to_string(z);
      }
    }
  }
}

TEST(Valuation, MultiplicativeAndUltrametric) {
  std::mt19937 rng(2024);
  for (Int p : {3, 5, 7, 11}) {
    for (int trial = 0; trial < 80; ++trial) {
      const auto y = random_element(p, rng), z = random_element(p, rng);
      const auto vy = pi_adic_valuation(y), vz = pi_adic_valuation(z);
      if (!vy || !vz) continue;
      EXPECT_EQ(pi_adic_valuation(y * z), *vy + *vz);
      if (const auto vs = pi_adic_valuation(y + z)) {
        EXPECT_GE(*vs, std::min(*vy, *vz));
        if (*vy != *vz) {
          EXPECT_EQ(*vs, std::min(*vy, *vz));
        }
      }
    }
  }
}

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mbound/cyclotomic.hpp"

using mbound::Cyclotomic;
using mbound::Rational;

namespace {

Cyclotomic z(int n, int k) { return Cyclotomic::root_of_unity(n, k); }

std::complex<double> numeric_root(int n, int k) {
  const double a = 2.0 * std::numbers::pi * k / n;
  return {std::cos(a), std::sin(a)};
}

// Small random element: a few rational multiples of roots of unity of mixed orders.
Cyclotomic random_element(std::mt19937& rng) {
  static const int orders[] = {1, 3, 4, 5, 7, 8, 9, 12, 15};
  std::uniform_int_distribution<int> pick(0, 8), num(-4, 4), den(1, 3), terms(1, 3);
  Cyclotomic x;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    const int n = orders[pick(rng)];
    std::uniform_int_distribution<int> kd(0, n - 1);
    x += Cyclotomic(Rational(num(rng), den(rng))) * z(n, kd(rng));
  }
  return x;
}

}  // namespace

TEST(Cyclotomic, RootOfUnityBasics) {
  EXPECT_EQ(z(1, 0), Cyclotomic(1));
  EXPECT_EQ(z(2, 1), Cyclotomic(-1));
  EXPECT_EQ(z(4, 2), Cyclotomic(-1));
  EXPECT_EQ(z(6, 3), Cyclotomic(-1));
  EXPECT_EQ(z(12, 4), z(3, 1));
  EXPECT_EQ(z(7, -1), z(7, 6));
  EXPECT_THROW(Cyclotomic::root_of_unity(0, 0), std::invalid_argument);
}

TEST(Cyclotomic, MinimalPolynomialOfZeta3) {
  // Oracle: 1 + zeta3 + zeta3^2 = 0 numerically.
  const auto s = numeric_root(3, 0) + numeric_root(3, 1) + numeric_root(3, 2);
  ASSERT_LT(std::abs(s), 1e-12);
  EXPECT_EQ(z(3, 1) + z(3, 2), Cyclotomic(-1));
}

TEST(Cyclotomic, FieldOperationExamples) {
  EXPECT_EQ(z(4, 1) * z(4, 1), Cyclotomic(-1));
  EXPECT_EQ(z(5, 1).conj(), z(5, 4));
  // Oracle: 2 cos(pi/3) = 1.
  ASSERT_NEAR((numeric_root(6, 1) + numeric_root(6, -1)).real(), 1.0, 1e-12);
  EXPECT_EQ(z(6, 1) + z(6, -1), Cyclotomic(1));
}

TEST(Cyclotomic, ToComplex) {
  EXPECT_EQ(Cyclotomic(1).to_complex(), std::complex<double>(1.0, 0.0));
  const auto i = z(4, 1).to_complex();
  EXPECT_NEAR(i.real(), 0.0, 1e-15);
  EXPECT_NEAR(i.imag(), 1.0, 1e-15);
  const auto w = z(3, 1).to_complex();
  EXPECT_NEAR(w.real(), std::cos(2 * std::numbers::pi / 3), 1e-12);
  EXPECT_NEAR(w.imag(), std::sin(2 * std::numbers::pi / 3), 1e-12);
  EXPECT_NEAR(w.imag(), 0.8660254037844386, 1e-12);
}

TEST(Cyclotomic, AsRational) {
  EXPECT_EQ(Cyclotomic(1).as_rational(), Rational(1));
  EXPECT_FALSE(z(5, 1).as_rational().has_value());
  // i + (-i) = 0
  EXPECT_EQ((z(8, 2) + z(8, -2)).as_rational(), Rational(0));
  EXPECT_EQ((z(8, 1) + z(8, 7)) * (z(8, 1) + z(8, 7)), Cyclotomic(2));  // (sqrt 2)^2
}

TEST(Cyclotomic, ConductorIsMinimal) {
  EXPECT_EQ((z(8, 1) + z(8, 7)).order(), 8);
  EXPECT_EQ((z(20, 4) + z(20, 16)).order(), 5);
  // sqrt(-3) = zeta3 - zeta3^2 lives in Q(zeta3).
  EXPECT_EQ((z(12, 4) - z(12, 8)).order(), 3);
  // Gauss sum for p = 5 is sqrt(5), conductor 5.
  Cyclotomic g = z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4);
  EXPECT_EQ(g * g, Cyclotomic(5));
  EXPECT_EQ(g.order(), 5);
  // zeta_15 * zeta_15^{-1} collapses to 1
  EXPECT_EQ(z(15, 4) * z(15, 11), Cyclotomic(1));
  // zeta_9^3 is zeta_3
  EXPECT_EQ(z(9, 3), z(3, 1));
  EXPECT_EQ(z(9, 3).order(), 3);
}

TEST(Cyclotomic, SumOfAllRootsVanishes) {
  for (int n = 2; n <= 40; ++n) {
    Cyclotomic s;
    for (int k = 0; k < n; ++k) s += z(n, k);
    EXPECT_TRUE(s.is_zero()) << "n = " << n;
  }
}

TEST(Cyclotomic, CanonicalFormAgreesWithNumericEquality) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_element(rng), b = random_element(rng);
    const bool numerically_equal = std::abs(a.to_complex() - b.to_complex()) < 1e-9;
    EXPECT_EQ(a == b, numerically_equal);
    EXPECT_EQ((a - b).is_zero(), numerically_equal);
  }
  // Equal values reached by different routes.
  EXPECT_EQ(z(5, 1) + z(5, 4), -(z(5, 2) + z(5, 3)) - Cyclotomic(1));
  EXPECT_EQ(z(24, 3) * z(24, 3), z(4, 1));
}

TEST(Cyclotomic, CanonicalizationIsIdempotent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_element(rng);
    const auto again = Cyclotomic::from_dense(a.order(), a.lift(a.order()));
    EXPECT_EQ(again, a);
    const auto wider = Cyclotomic::from_dense(4 * a.order(), a.lift(4 * a.order()));
    EXPECT_EQ(wider, a);
  }
}

TEST(Cyclotomic, FieldAxioms) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    if (!a.is_zero() && a.order() <= 24) {
      EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
    }
  }
  EXPECT_THROW(Cyclotomic().inverse(), std::domain_error);
}

TEST(Cyclotomic, ToComplexIsRingHomomorphism) {
  std::mt19937 rng(5);
  static const int divisors_of_120[] = {1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 40, 60, 120};
  std::uniform_int_distribution<int> len(1, 8), pick(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    Cyclotomic exact(1);
    std::complex<double> approx(1.0, 0.0);
    const int n_factors = len(rng);
    for (int i = 0; i < n_factors; ++i) {
      const int n = divisors_of_120[pick(rng)];
      std::uniform_int_distribution<int> kd(0, n - 1);
      const int k = kd(rng);
      exact *= z(n, k);
      approx *= numeric_root(n, k);
    }
    EXPECT_LT(std::abs(exact.to_complex() - approx), 1e-10);
    const auto sum_exact = exact + z(7, 2);
    EXPECT_LT(std::abs(sum_exact.to_complex() - (approx + numeric_root(7, 2))), 1e-10);
  }
}

TEST(Cyclotomic, GaloisAction) {
  EXPECT_EQ(z(7, 1).galois(3), z(7, 3));
  EXPECT_THROW(z(6, 1).galois(3), std::invalid_argument);
  const Cyclotomic sqrt2 = z(8, 1) + z(8, 7);
  EXPECT_EQ(sqrt2.galois(3), -sqrt2);
}

TEST(Cyclotomic, OrderLimit) {
  EXPECT_THROW(Cyclotomic::root_of_unity(Cyclotomic::kMaxOrder + 1, 1), mbound::ResourceError);
}

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "xsf/bessel_kernel.hpp"
#include "xsf/errors.hpp"
#include "xsf/special.hpp"

using namespace xsf;

TEST(KHalf, ClosedFormValues) {
  EXPECT_NEAR(k_half(1.0), std::sqrt(M_PI / 2) * std::exp(-1.0), 1e-16);
  EXPECT_NEAR(k_half(1.0), 0.46106850, 5e-9);
  EXPECT_DOUBLE_EQ(k_half(4.0), std::sqrt(M_PI / 8) * std::exp(-4.0));
}

TEST(KHalf, LargeArgumentScaling) {
  EXPECT_NEAR(k_half(50.0) * std::exp(50.0) * std::sqrt(50.0), std::sqrt(M_PI / 2), 1e-12);
}

TEST(KHalf, RejectsNonPositiveArgument) {
  EXPECT_THROW(k_half(0.0), DomainError);
  EXPECT_THROW(k_half(-1.0), DomainError);
  EXPECT_THROW(k_half_integer(2, 0.0), DomainError);
  EXPECT_THROW(k_real_order(0.3, -1.0), DomainError);
}

TEST(KHalfInteger, FirstOrdersFromTheTerminatingSum) {
  EXPECT_DOUBLE_EQ(k_half_integer(0, 1.0), k_half(1.0));
  EXPECT_NEAR(k_half_integer(1, 1.0), 2 * std::sqrt(M_PI / 2) * std::exp(-1.0), 1e-15);
}

TEST(KHalfInteger, OrderFiveHalvesAgainstLibraryBessel) {
  // Sum written out: 1 + 6/(4) * 1 + 24/(16 * 2) = 1 + 1.5 + 0.75.
  const double by_hand = std::sqrt(M_PI / 4) * std::exp(-2.0) * (1 + 1.5 + 0.75);
  EXPECT_NEAR(k_half_integer(2, 2.0), by_hand, 1e-15);
  EXPECT_LT(oracle::rel_diff(k_half_integer(2, 2.0),
                             static_cast<double>(oracle::bessel_k(2.5L, 2.0L))),
            1e-14);
  EXPECT_NEAR(k_half_integer(2, 2.0), 0.38979775889619970395, 1e-15);
}

TEST(KRealOrder, ReproducesHalfIntegerClosedForms) {
  EXPECT_LT(oracle::rel_diff(k_real_order(0.5, 1.0), k_half(1.0)), 1e-12);
  EXPECT_LT(oracle::rel_diff(k_real_order(1.5, 1.0), k_half_integer(1, 1.0)), 1e-12);
}

TEST(KRealOrder, NonHalfIntegerOrderMatchesOracles) {
  // Refinement oracle on the cosh integral at a tighter tolerance, plus the
  // standard library's Bessel K.
  const long double by_cosh = oracle::romberg(
      [](long double u) { return std::exp(-2 * std::cosh(u)) * std::cosh(0.75L * u); }, 0, 40,
      1e-14L);
  EXPECT_LT(oracle::rel_diff(k_real_order(0.75, 2.0), static_cast<double>(by_cosh)), 1e-12);
  EXPECT_LT(oracle::rel_diff(k_real_order(0.75, 2.0), 0.12790297862917902633), 1e-12);
}

TEST(KRealOrder, AgreesWithTerminatingSumOnGrid) {
  for (int n = 0; n <= 6; ++n) {
    for (double z : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double exact = k_half_integer(n, z);
      EXPECT_LE(std::abs(exact - k_real_order(n + 0.5, z)) / exact, 1e-9)
          << "n=" << n << " z=" << z;
    }
  }
}

TEST(KRealOrder, DecreasingInArgument) {
  for (double order : {0.0, 0.3, 0.75, 1.5, 2.2}) {
    double prev = k_real_order(order, 0.05);
    for (double z = 0.1; z < 30; z *= 1.4) {
      const double cur = k_real_order(order, z);
      EXPECT_LT(cur, prev) << "order=" << order << " z=" << z;
      prev = cur;
    }
  }
}

TEST(KScaled, HalfOrderIsTheBarePrefactor) {
  for (double z : {1e-3, 0.7, 3.0, 1e4}) {
    EXPECT_NEAR(k_scaled(0.5, z) / std::sqrt(M_PI / (2 * z)), 1.0, 1e-14);
  }
  EXPECT_NEAR(k_scaled(1.5, 100.0), std::sqrt(M_PI / 200) * 1.01, 1e-15);
}

TEST(KScaled, LargeArgumentNonHalfIntegerOrder) {
  EXPECT_LT(oracle::rel_diff(k_scaled(0.75, 500.0), 0.056067413010681666043), 1e-12);
  // At z = 1000 the unscaled value is below the smallest double.
  EXPECT_EQ(k_real_order(0.75, 1000.0), 0.0);
  const double scaled = k_scaled(0.75, 1000.0);
  EXPECT_TRUE(std::isfinite(scaled));
  EXPECT_NEAR(scaled / std::sqrt(M_PI / 2000), 1.0, 1e-3);
}

TEST(KScaled, UnscalesToRealOrderValue) {
  for (double order : {0.1, 0.75, 1.3, 3.7}) {
    for (double z : {0.05, 0.5, 2.0, 20.0, 200.0}) {
      const double plain = k_real_order(order, z);
      EXPECT_LE(std::abs(k_scaled(order, z) * std::exp(-z) - plain) / plain, 1e-12)
          << "order=" << order << " z=" << z;
      EXPECT_NEAR(log_k_scaled(order, z), std::log(k_scaled(order, z)), 1e-13);
    }
  }
}

TEST(KernelOrder, EvenInOrderAndHalfIntegerDetection) {
  EXPECT_DOUBLE_EQ(KernelOrder(0.0).bessel_order(), 0.5);
  EXPECT_DOUBLE_EQ(KernelOrder(-1.0).bessel_order(), 0.5);
  EXPECT_EQ(KernelOrder(2.0).half_integer_index(), 2);
  EXPECT_EQ(KernelOrder(-3.0).half_integer_index(), 2);
  EXPECT_EQ(KernelOrder(1.0 + 5e-13).half_integer_index(), 1);
  EXPECT_FALSE(KernelOrder(1.0 + 1e-9).half_integer_index().has_value());
  EXPECT_FALSE(KernelOrder(0.3).half_integer_index().has_value());
  EXPECT_DOUBLE_EQ(k_scaled(KernelOrder(-1.3).bessel_order(), 2.0),
                   k_scaled(KernelOrder(0.3).bessel_order(), 2.0));
}

TEST(Special, ClassicalBuildingBlocks) {
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-15);
  EXPECT_NEAR(classical_beta(2.0, 3.0), 1.0 / 12.0, 1e-16);
  EXPECT_DOUBLE_EQ(pochhammer(0.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(pochhammer(0.0, 3), 0.0);
  EXPECT_DOUBLE_EQ(pochhammer(2.0, 3), 24.0);
  EXPECT_DOUBLE_EQ(half_integer_coefficient(2, 1), 6.0);
  EXPECT_DOUBLE_EQ(half_integer_coefficient(2, 2), 12.0);
  EXPECT_DOUBLE_EQ(half_integer_coefficient(2, 3), 0.0);
  EXPECT_THROW(log_gamma(-1.0), ParameterError);
}

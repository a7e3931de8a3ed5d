#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_beta.hpp"
#include "xsf/quadrature.hpp"

using namespace xsf;

TEST(IntegrateFinite, ConstantIntegrandGivesIntervalLength) {
  const QuadResult r = integrate_finite([](double) { return 1.0; }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(IntegrateFinite, QuadraticPolynomialIsExact) {
  const QuadResult r = integrate_finite([](double t) { return t * (1 - t); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 6.0, 1e-15);
}

TEST(IntegrateFinite, EssentiallyDecayingIntegrandMatchesRefinementOracle) {
  const auto f = [](double t) { return std::exp(-1.0 / (t * (1 - t))); };
  QuadConfig cfg;
  const QuadResult r = integrate_finite(f, 0.0, 1.0, cfg);
  const long double want = oracle::romberg(
      [](long double t) -> long double {
        return (t <= 0 || t >= 1) ? 0 : std::exp(-1 / (t * (1 - t)));
      },
      0, 1, cfg.rel_tol / 10);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(oracle::rel_diff(r.value, static_cast<double>(want)), 1e-10);
}

TEST(IntegrateFinite, NeverEvaluatesTheEndpoints) {
  const auto f = [](double t) {
    if (t == 0.0 || t == 2.0) ADD_FAILURE() << "endpoint evaluated";
    return std::sqrt(t);
  };
  const QuadResult r = integrate_finite(f, 0.0, 2.0);
  EXPECT_NEAR(r.value, 2.0 / 3.0 * std::pow(2.0, 1.5), 1e-9);
}

TEST(IntegrateFinite, NonFiniteInteriorValueThrows) {
  const auto f = [](double t) { return t > 0.3 ? std::nan("") : 1.0; };
  try {
    integrate_finite(f, 0.0, 1.0);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_NE(std::string(e.what()).find("integrand not finite"), std::string::npos);
  }
}

TEST(IntegrateFinite, ExhaustedBudgetReportsNotConvergedWithoutThrowing) {
  QuadConfig cfg;
  cfg.max_subdivisions = 3;
  const QuadResult r =
      integrate_finite([](double t) { return std::sin(1.0 / t) / t; }, 1e-3, 1.0, cfg);
  EXPECT_FALSE(r.converged);
}

TEST(IntegrateFinite, ConvergedResultHonorsItsTolerance) {
  QuadConfig cfg;
  const QuadResult r = integrate_finite([](double t) { return std::log(t); }, 0.0, 1.0, cfg);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.abs_err_estimate, std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
  EXPECT_NEAR(r.value, -1.0, 1e-10);
}

TEST(QuadConfig, RejectsUnusableSettings) {
  QuadConfig both_zero;
  both_zero.abs_tol = 0;
  both_zero.rel_tol = 0;
  EXPECT_THROW(both_zero.validate(), ParameterError);
  QuadConfig no_panels;
  no_panels.max_subdivisions = 0;
  EXPECT_THROW(no_panels.validate(), ParameterError);
  QuadConfig tiny_budget;
  tiny_budget.max_evals = 10;
  EXPECT_THROW(tiny_budget.validate(), ParameterError);
  EXPECT_NO_THROW(QuadConfig{}.validate());
}

TEST(IntegrateSemiInfinite, ExponentialIntegrals) {
  EXPECT_NEAR(integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0).value, 1.0,
              1e-12);
  EXPECT_NEAR(integrate_semi_infinite([](double t) { return t * std::exp(-t); }, 0.0).value,
              1.0, 1e-12);
}

TEST(IntegrateSemiInfinite, HalfOrderKernelMomentMatchesGammaClosedForm) {
  // int_0^inf t^(1/2) K_{1/2}(t) dt with the closed form of K_{1/2}; the
  // Mellin kernel factor at s = 1, nu = 0 times sqrt(pi/2) is the same number.
  const auto f = [](double t) { return std::sqrt(t) * std::sqrt(M_PI / (2 * t)) * std::exp(-t); };
  const QuadResult r = integrate_semi_infinite(f, 0.0);
  EXPECT_NEAR(r.value, std::sqrt(M_PI / 2), 1e-11);
  EXPECT_NEAR(std::exp(log_mellin_kernel_factor(1.0, 0.0)) * std::sqrt(M_PI / 2), r.value,
              1e-11);
}

TEST(IntegrateSemiInfinite, NonDecayingTailThrows) {
  try {
    integrate_semi_infinite([](double t) { return 1.0 / std::sqrt(1 + t); }, 0.0);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_NE(std::string(e.what()).find("tail does not converge"), std::string::npos);
  }
}

TEST(IntegrateLog, MatchesPlainIntegralOnTinyValues) {
  // exp(-800) t(1-t): far below the smallest double, handled via the scale.
  const LogQuadResult r = integrate_log_finite(
      [](double t) { return -800.0 + std::log(t) + std::log1p(-t); }, 0.0, 1.0);
  ASSERT_TRUE(r.converged());
  EXPECT_NEAR(r.log_value(), -800.0 - std::log(6.0), 1e-12);
}

TEST(IntegrateLog, SemiInfiniteGammaIntegral) {
  const LogQuadResult r = integrate_log_semi_infinite(
      [](double t) { return 4.0 * std::log(t) - t; }, 0.0);
  EXPECT_NEAR(r.value(), 24.0, 24.0 * 1e-11);
}

TEST(AddLogResults, IsSymmetricBitForBit) {
  const LogQuadResult a = integrate_log_finite([](double t) { return -3 * t; }, 0.0, 1.0);
  const LogQuadResult b = integrate_log_finite([](double t) { return 200 - t * t; }, 0.0, 2.0);
  const LogQuadResult ab = add_log_results(a, b);
  const LogQuadResult ba = add_log_results(b, a);
  EXPECT_EQ(ab.normalized.value, ba.normalized.value);
  EXPECT_EQ(ab.log_scale, ba.log_scale);
  EXPECT_EQ(ab.normalized.abs_err_estimate, ba.normalized.abs_err_estimate);
}

namespace {

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

TEST(QuadratureProperty, LinearityOnRandomPolynomials) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(7), g(7);
    for (auto& v : f) v = coef(rng);
    for (auto& v : g) v = coef(rng);
    const double alpha = coef(rng), beta = coef(rng);
    const QuadResult rf = integrate_finite([&](double t) { return poly_eval(f, t); }, -1, 2);
    const QuadResult rg = integrate_finite([&](double t) { return poly_eval(g, t); }, -1, 2);
    const QuadResult rc = integrate_finite(
        [&](double t) { return alpha * poly_eval(f, t) + beta * poly_eval(g, t); }, -1, 2);
    const double bound = 2 * (std::abs(alpha) * rf.abs_err_estimate +
                              std::abs(beta) * rg.abs_err_estimate + rc.abs_err_estimate);
    EXPECT_LE(std::abs(rc.value - (alpha * rf.value + beta * rg.value)), bound);
  }
}

TEST(QuadratureProperty, IntervalAdditivity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> split(0.05, 2.95);
  const auto f = [](double t) { return std::exp(std::sin(3 * t)) / (1 + t * t); };
  const QuadResult whole = integrate_finite(f, 0.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double c = split(rng);
    const QuadResult left = integrate_finite(f, 0.0, c);
    const QuadResult right = integrate_finite(f, c, 3.0);
    const double bound =
        whole.abs_err_estimate + left.abs_err_estimate + right.abs_err_estimate;
    EXPECT_LE(std::abs(whole.value - left.value - right.value), bound) << "c = " << c;
  }
}

TEST(QuadratureProperty, ErrorEstimatesAreHonestOnSeededCorpus) {
  // Integrands with closed-form antiderivatives, loose tolerances so that the
  // estimates are exercised rather than pinned at roundoff.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> k_dist(0.5, 12.0);
  std::uniform_real_distribution<double> end_dist(0.2, 3.0);
  std::uniform_int_distribution<int> kind_dist(0, 3);
  int honest = 0, total = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double k = k_dist(rng), b = end_dist(rng);
    const int kind = kind_dist(rng);
    QuadConfig cfg;
    cfg.abs_tol = 0.0;
    cfg.rel_tol = std::pow(10.0, -3.0 - (trial % 8));
    Integrand f;
    double exact = 0.0;
    switch (kind) {
      case 0:
        f = [k](double t) { return std::exp(k * t); };
        exact = std::expm1(k * b) / k;
        break;
      case 1:
        f = [k](double t) { return std::cos(k * t); };
        exact = std::sin(k * b) / k;
        break;
      case 2:
        f = [k](double t) { return 1.0 / (1.0 + k * k * t * t); };
        exact = std::atan(k * b) / k;
        break;
      default:
        f = [k](double t) { return std::pow(t, 1.0 / k); };
        exact = std::pow(b, 1.0 / k + 1) / (1.0 / k + 1);
        break;
    }
    const QuadResult r = integrate_finite(f, 0.0, b, cfg);
    ++total;
    if (std::abs(r.value - exact) <= 10 * r.abs_err_estimate) ++honest;
  }
  EXPECT_GE(static_cast<double>(honest) / total, 0.99);
}

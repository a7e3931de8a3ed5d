#include "xsf/bessel_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xsf/errors.hpp"
#include "xsf/special.hpp"

namespace xsf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIntegerTol = 1e-12;

void require_positive_argument(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("Bessel K requires a finite argument z > 0, got " +
                      std::to_string(z));
  }
}

std::optional<int> half_integer_of(double order) {
  const double a = std::abs(order) - 0.5;
  const double n = std::round(a);
  if (n >= 0.0 && std::abs(a - n) <= kIntegerTol && n < 1e6) {
    return static_cast<int>(n);
  }
  return std::nullopt;
}

double log_half_integer_scaled(int n, double z) {
  const double x = 0.5 / z;
  double sum = 0.0;
  double log_factor = 0.0;
  if (x <= 1.0) {
    double power = 1.0;
    for (int m = 0; m <= n; ++m) {
      sum += half_integer_coefficient(n, m) * power;
      power *= x;
    }
  } else {
    // Factor out x^n so the largest power is 1.
    const double inv = 1.0 / x;
    double power = 1.0;
    for (int m = n; m >= 0; --m) {
      sum += half_integer_coefficient(n, m) * power;
      power *= inv;
    }
    log_factor = n * std::log(x);
  }
  return 0.5 * std::log(kPi / (2.0 * z)) + log_factor + std::log(sum);
}

// Hankel expansion of e^z K_a(z); used where its smallest term is far below
// double precision.
bool large_argument(double a, double z) { return z >= 25.0 + a * a; }

double log_asymptotic_scaled(double a, double z) {
  const double mu = 4.0 * a * a;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 0.5 * std::log(kPi / (2.0 * z)) + std::log(sum);
}

double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// Log of the scaled integrand exp(-z (cosh u - 1)) cosh(a u).
double log_scaled_integrand(double a, double z, double u) {
  const double s = std::sinh(0.5 * u);
  return log_cosh(a * u) - 2.0 * z * s * s;
}

double log_trapezoid_scaled(double a, double z, double rel_tol,
                            long max_evals) {
  const double peak = std::asinh(a / z);
  const double shift = log_scaled_integrand(a, z, peak);
  const double cutoff = -45.0;

  long evals = 0;
  // Sum of exp(phi(k h) - shift) over k = start, start + stride, ... until
  // past the peak and negligible.
  auto strided_sum = [&](double h, int start, int stride) {
    double sum = 0.0;
    for (long k = start;; k += stride) {
      const double u = k * h;
      const double l = log_scaled_integrand(a, z, u) - shift;
      ++evals;
      sum += std::exp(l);
      if (u > peak && l < cutoff) break;
      if (evals > max_evals) break;
    }
    return sum;
  };

  double h = std::min(0.5, 1.0 / std::sqrt(std::hypot(a, z)));
  double trap = h * (0.5 * std::exp(log_scaled_integrand(a, z, 0.0) - shift) +
                     strided_sum(h, 1, 1));
  for (int level = 1; level <= 16; ++level) {
    h *= 0.5;
    const double next = 0.5 * trap + h * strided_sum(h, 1, 2);
    const bool settled = std::abs(next - trap) <= rel_tol * next;
    trap = next;
    if (settled && level >= 2) return std::log(trap) + shift;
    if (evals > max_evals) break;
  }
  throw QuadratureError("Bessel K integral did not converge for order " +
                        std::to_string(a) + ", z = " + std::to_string(z));
}

double log_k_scaled_impl(double order, double z, double rel_tol,
                         long max_evals) {
  require_positive_argument(z);
  if (!std::isfinite(order)) throw ParameterError("Bessel order must be finite");
  if (auto n = half_integer_of(order)) return log_half_integer_scaled(*n, z);
  const double a = std::abs(order);
  if (large_argument(a, z)) return log_asymptotic_scaled(a, z);
  return log_trapezoid_scaled(a, z, rel_tol, max_evals);
}

}  // namespace

KernelOrder::KernelOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu)) throw ParameterError("nu must be finite");
}

double KernelOrder::bessel_order() const { return std::abs(nu_ + 0.5); }

std::optional<int> KernelOrder::half_integer_index() const {
  return half_integer_of(nu_ + 0.5);
}

double k_half(double z) {
  require_positive_argument(z);
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
}

double k_half_integer(int n, double z) {
  require_positive_argument(z);
  if (n < 0) throw ParameterError("k_half_integer requires n >= 0");
  double sum = 0.0;
  const double inv = 1.0 / (2.0 * z);
  double power = 1.0;
  for (int m = 0; m <= n; ++m) {
    sum += half_integer_coefficient(n, m) * power;
    power *= inv;
  }
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
}

double k_real_order(double order, double z, const QuadConfig& cfg) {
  cfg.validate();
  require_positive_argument(z);
  if (!std::isfinite(order)) throw ParameterError("Bessel order must be finite");
  // Always the integral, even at half-integer orders, so it stays an
  // independent check on the closed forms.
  const double tol = std::min(cfg.rel_tol > 0.0 ? cfg.rel_tol : 1e-13, 1e-13);
  return std::exp(
      log_trapezoid_scaled(std::abs(order), z, tol, cfg.max_evals) - z);
}

double k_scaled(double order, double z) { return std::exp(log_k_scaled(order, z)); }

double log_k_scaled(double order, double z) {
  return log_k_scaled_impl(order, z, 1e-14, 200000);
}

}  // namespace xsf

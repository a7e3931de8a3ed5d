#include "xsf/extended_gamma.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xsf/bessel_kernel.hpp"
#include "xsf/errors.hpp"

namespace xsf {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
}

void check_p_alpha(double alpha, double p, bool lower_endpoint_zero) {
  require_finite(alpha, "alpha");
  require_finite(p, "p");
  if (p < 0.0) throw ParameterError("p must be >= 0");
  if (p == 0.0 && lower_endpoint_zero && !(alpha > 0.0)) {
    throw ParameterError("p=0 requires alpha > 0");
  }
}

double log_prefactor(double p) { return 0.5 * std::log(2.0 * p / std::numbers::pi); }

}  // namespace

double converged_value(const LogQuadResult& r, const char* what) {
  if (!r.converged()) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge");
  }
  return r.value();
}

double converged_log_value(const LogQuadResult& r, const char* what) {
  if (!r.converged()) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge");
  }
  return r.log_value();
}

LogQuadResult gamma_lower_p_quad(double alpha, double x, double p,
                                 const QuadConfig& cfg) {
  check_p_alpha(alpha, p, true);
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("x must be finite and > 0");
  auto log_f = [=](double t) { return (alpha - 1.0) * std::log(t) - t - p / t; };
  return integrate_log_finite(log_f, 0.0, x, cfg);
}

double gamma_lower_p(double alpha, double x, double p, const QuadConfig& cfg) {
  return converged_value(gamma_lower_p_quad(alpha, x, p, cfg), "gamma_lower_p");
}

LogQuadResult gamma_upper_p_quad(double alpha, double x, double p,
                                 const QuadConfig& cfg) {
  check_p_alpha(alpha, p, x == 0.0);
  if (!(x >= 0.0) || !std::isfinite(x)) throw ParameterError("x must be finite and >= 0");
  auto log_f = [=](double t) { return (alpha - 1.0) * std::log(t) - t - p / t; };
  return integrate_log_semi_infinite(log_f, x, cfg);
}

double gamma_upper_p(double alpha, double x, double p, const QuadConfig& cfg) {
  return converged_value(gamma_upper_p_quad(alpha, x, p, cfg), "gamma_upper_p");
}

double gamma_total_p(double alpha, double p) {
  require_finite(alpha, "alpha");
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("gamma_total_p requires p > 0");
  const double z = 2.0 * std::sqrt(p);
  return std::exp(std::numbers::ln2 + 0.5 * alpha * std::log(p) +
                  log_k_scaled(alpha, z) - z);
}

namespace {

void check_nu_params(double alpha, double p, double nu) {
  require_finite(alpha, "alpha");
  require_finite(nu, "nu");
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ParameterError("the Bessel-kernel gamma functions require p > 0");
  }
}

auto nu_log_integrand(double alpha, double p, double nu) {
  const double order = KernelOrder(nu).bessel_order();
  const double c0 = log_prefactor(p);
  return [=](double t) {
    const double w = p / t;
    return c0 + (alpha - 1.5) * std::log(t) - t - w + log_k_scaled(order, w);
  };
}

}  // namespace

LogQuadResult gamma_lower_nu_quad(double alpha, double x, double p, double nu,
                                  const QuadConfig& cfg) {
  check_nu_params(alpha, p, nu);
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("x must be finite and > 0");
  return integrate_log_finite(nu_log_integrand(alpha, p, nu), 0.0, x, cfg);
}

double gamma_lower_nu(double alpha, double x, double p, double nu,
                      const QuadConfig& cfg) {
  return converged_value(gamma_lower_nu_quad(alpha, x, p, nu, cfg), "gamma_lower_nu");
}

LogQuadResult gamma_upper_nu_quad(double alpha, double x, double p, double nu,
                                  const QuadConfig& cfg) {
  check_nu_params(alpha, p, nu);
  if (!(x >= 0.0) || !std::isfinite(x)) throw ParameterError("x must be finite and >= 0");
  return integrate_log_semi_infinite(nu_log_integrand(alpha, p, nu), x, cfg);
}

double gamma_upper_nu(double alpha, double x, double p, double nu,
                      const QuadConfig& cfg) {
  return converged_value(gamma_upper_nu_quad(alpha, x, p, nu, cfg), "gamma_upper_nu");
}

}  // namespace xsf

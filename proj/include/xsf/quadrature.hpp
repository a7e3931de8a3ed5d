#pragma once

#include <cmath>
#include <functional>

namespace xsf {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  long max_evals = 200000;

  // Throws ParameterError when the tolerances/budgets are unusable.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  long evals = 0;
  int subdivisions = 0;
  bool converged = false;
};

// Result of integrating exp(log_f) where the integrand was rescaled by
// exp(-log_scale) before integration.  `normalized` holds the integral of
// the rescaled integrand, so its tolerances act relative to the size of the
// true integral rather than in absolute units.
struct LogQuadResult {
  QuadResult normalized;
  double log_scale = 0.0;

  double value() const { return normalized.value * std::exp(log_scale); }
  double abs_err_estimate() const {
    return normalized.abs_err_estimate * std::exp(log_scale);
  }
  double log_value() const { return std::log(normalized.value) + log_scale; }
  bool converged() const { return normalized.converged; }
  QuadResult unscaled() const;
};

// Sum of two log-scaled integrals.  Symmetric in its arguments, so
// add_log_results(a, b) and add_log_results(b, a) are bit-identical.
LogQuadResult add_log_results(const LogQuadResult& lhs, const LogQuadResult& rhs);

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) integration over (a, b).  Only
// interior nodes are ever evaluated, so integrands defined by a limit at
// either endpoint are fine.  A non-finite integrand value throws
// QuadratureError("integrand not finite"); running out of budget returns
// converged = false.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadConfig& cfg = {});

// Integral over (a, inf) through t = a + u/(1-u).  Before integrating, the
// contributions of successive doublings far out in the tail are compared and
// a tail that does not shrink throws QuadratureError("tail does not converge").
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadConfig& cfg = {});

// Log-space variants: log_f returns log of a non-negative integrand (-inf for
// zero).  The integrand is divided by a coarse estimate of the integral
// before the adaptive pass.
LogQuadResult integrate_log_finite(const Integrand& log_f, double a, double b,
                                   const QuadConfig& cfg = {});
LogQuadResult integrate_log_semi_infinite(const Integrand& log_f, double a,
                                          const QuadConfig& cfg = {});

}  // namespace xsf

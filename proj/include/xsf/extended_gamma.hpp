#pragma once

#include "xsf/quadrature.hpp"

namespace xsf {

// gamma(alpha, x; p) = int_0^x t^(alpha-1) exp(-t - p/t) dt.
// Requires x > 0 and either p > 0, or p = 0 with alpha > 0.
LogQuadResult gamma_lower_p_quad(double alpha, double x, double p,
                                 const QuadConfig& cfg = {});
double gamma_lower_p(double alpha, double x, double p, const QuadConfig& cfg = {});

// Gamma(alpha, x; p) = int_x^inf t^(alpha-1) exp(-t - p/t) dt, x >= 0.
LogQuadResult gamma_upper_p_quad(double alpha, double x, double p,
                                 const QuadConfig& cfg = {});
double gamma_upper_p(double alpha, double x, double p, const QuadConfig& cfg = {});

// Gamma_p(alpha) = 2 p^(alpha/2) K_alpha(2 sqrt(p)), p > 0.
double gamma_total_p(double alpha, double p);

// Bessel-kernel versions:
//   gamma_nu(alpha, x; p) = sqrt(2p/pi) int_0^x t^(alpha-3/2) e^-t K_{nu+1/2}(p/t) dt
//   Gamma_nu(alpha, x; p) = the same over (x, inf).
// Both require p > 0; the lower one x > 0, the upper one x >= 0.
LogQuadResult gamma_lower_nu_quad(double alpha, double x, double p, double nu,
                                  const QuadConfig& cfg = {});
double gamma_lower_nu(double alpha, double x, double p, double nu,
                      const QuadConfig& cfg = {});
LogQuadResult gamma_upper_nu_quad(double alpha, double x, double p, double nu,
                                  const QuadConfig& cfg = {});
double gamma_upper_nu(double alpha, double x, double p, double nu,
                      const QuadConfig& cfg = {});

// Returns r.value(), or throws QuadratureError naming `what` when the
// quadrature did not meet its tolerance.
double converged_value(const LogQuadResult& r, const char* what);
double converged_log_value(const LogQuadResult& r, const char* what);

}  // namespace xsf

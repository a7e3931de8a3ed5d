#pragma once

#include "xsf/quadrature.hpp"
#include "xsf/special.hpp"

namespace xsf {

enum class BetaRepr { defining, trig, rational, symmetric };

// B(x, y; p) = int_0^1 t^(x-1) (1-t)^(y-1) exp(-p/(t(1-t))) dt.
// p > 0 accepts any real x, y; p = 0 is the classical Beta (x, y > 0).
LogQuadResult beta_p_quad(double x, double y, double p, const QuadConfig& cfg = {});
double beta_p(double x, double y, double p, const QuadConfig& cfg = {});

// B_nu(x, y; p) = sqrt(2p/pi) int_0^1 t^(x-3/2) (1-t)^(y-3/2) K_{nu+1/2}(p/(t(1-t))) dt.
// p > 0, or p = 0 with nu = 0 (classical Beta).  Exactly symmetric in x, y.
LogQuadResult beta_nu_quad(double x, double y, double p, double nu,
                           const QuadConfig& cfg = {});
double beta_nu(double x, double y, double p, double nu, const QuadConfig& cfg = {});
double log_beta_nu(double x, double y, double p, double nu, const QuadConfig& cfg = {});

// The same integral after one of the substitutions t = cos^2(theta),
// t = u/(1+u) or t = (1+u)/2.  Requires p > 0.
LogQuadResult beta_nu_repr_quad(double x, double y, double p, double nu, BetaRepr repr,
                                const QuadConfig& cfg = {});
double beta_nu_repr(double x, double y, double p, double nu, BetaRepr repr,
                    const QuadConfig& cfg = {});

// Finite sum over m = 0..n of (n+m)!/(m!(n-m)!) (2p)^-m B(x+m, y+m; p);
// equals B_n(x, y; p).
double beta_int_nu(double x, double y, double p, int n, const QuadConfig& cfg = {});

// Truncated series
//   sum_1my:   sum_n (y)_n/n! B_nu(x+n, 1; p)   -> B_nu(x, 1-y; p)
//   sum_shift: sum_n B_nu(x+n, y+1; p)          -> B_nu(x, y; p)
// with n_terms terms.  converged means last term <= cfg.rel_tol * |sum|.
SeriesResult beta_nu_sum_1my(double x, double y, double p, double nu, int n_terms,
                             const QuadConfig& cfg = {});
SeriesResult beta_nu_sum_shift(double x, double y, double p, double nu, int n_terms,
                               const QuadConfig& cfg = {});

// Same series, summed until `settle` consecutive terms fall below
// tail_tol * |sum| (or max_terms is reached).
struct SeriesControl {
  int max_terms = 500;
  double tail_tol = 1e-12;
  int settle = 3;
};
SeriesResult beta_nu_sum_1my_until(double x, double y, double p, double nu,
                                   const SeriesControl& ctl, const QuadConfig& cfg = {});
SeriesResult beta_nu_sum_shift_until(double x, double y, double p, double nu,
                                     const SeriesControl& ctl, const QuadConfig& cfg = {});

// The integral defining B_nu taken over (0, cutoff), 0 < cutoff < 1.
LogQuadResult beta_incomplete_nu_quad(double cutoff, double a, double b, double p,
                                      double nu, const QuadConfig& cfg = {});
double beta_incomplete_nu(double cutoff, double a, double b, double p, double nu,
                          const QuadConfig& cfg = {});

// log of 2^(s-1)/sqrt(pi) Gamma((s-nu)/2) Gamma((s+nu+1)/2), the Mellin
// transform in p of sqrt(2p/pi) K_{nu+1/2}(p) p^(-1/2) up to the Beta factor.
// Requires s - nu > 0 and s + nu > -1.
double log_mellin_kernel_factor(double s, double nu);

// 2^(s-1)/sqrt(pi) Gamma((s-nu)/2) Gamma((s+nu+1)/2) B(x+s, y+s).
// Requires x+s > 0, y+s > 0, s-nu > 0, s+nu > -1.
double beta_nu_mellin_rhs(double x, double y, double s, double nu);

struct MellinCheckReport {
  double s = 0.0;
  double nu = 0.0;
  double x = 0.0;
  double y = 0.0;
  double lhs_numeric = 0.0;
  double rhs_closed = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

// int_0^inf p^(s-1) f(p) dp for a positive f given through log_f(p).  The
// part over (0, 1) is taken in v = -log p, the rest directly; points with
// p = e^-v below the smallest normal double are dropped.
LogQuadResult mellin_integral(const Integrand& log_f, double s, const QuadConfig& cfg = {});

MellinCheckReport make_mellin_report(double s, double nu, double x, double y,
                                     double lhs, double rhs);

MellinCheckReport beta_nu_mellin_check(double x, double y, double s, double nu,
                                       const QuadConfig& cfg = {});

}  // namespace xsf

#pragma once

#include "xsf/extended_beta.hpp"
#include "xsf/quadrature.hpp"
#include "xsf/special.hpp"

namespace xsf {

enum class HypMethod { integral, series };

const char* to_string(HypMethod m);

// A function value together with how it was obtained.  For the integral
// method err_estimate is the quadrature estimate and terms_used is 0; for the
// series it is the magnitude of the last term added.
struct HypValue {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = false;
  int terms_used = 0;
  HypMethod method = HypMethod::integral;
};

// Classical 2F1(a, b; c; z) by its power series, |z| < 1.
SeriesResult gauss_2f1(double a, double b, double c, double z, double tol = 1e-15);

// Classical 1F1(b; c; z).  Negative z goes through e^z 1F1(c-b; c; -z) so
// the summed terms do not cancel.
SeriesResult kummer_1f1(double b, double c, double z, double tol = 1e-15);

// p-extended functions from their Euler-type integrals, normalized by
// B(b, c-b):
//   F_p(a,b;c;z) = int_0^1 t^(b-1)(1-t)^(c-b-1)(1-zt)^-a exp(-p/(t(1-t))) dt / B(b,c-b)
//   Phi_p(b;c;z) = int_0^1 t^(b-1)(1-t)^(c-b-1) exp(zt - p/(t(1-t))) dt / B(b,c-b)
// Require c > b > 0 and p >= 0; F_p additionally z <= 1 (z = 1 needs p > 0
// or c - a - b > 0).
double f_p(double a, double b, double c, double z, double p, const QuadConfig& cfg = {});
double phi_p(double b, double c, double z, double p, const QuadConfig& cfg = {});

// Bessel-kernel functions F_{p,nu}(a,b;c;z), Phi_{p,nu}(b;c;z).
// Series: sum_n (a)_n z^n/n! B_nu(b+n, c-b; p)/B(b, c-b)   (|z| < 1 for F)
// Integral: the kernel sqrt(2p/pi) t^(-1/2)(1-t)^(-1/2) K_{nu+1/2}(p/(t(1-t)))
// in place of exp(-p/(t(1-t))) above.
// p = 0 is accepted only with nu = 0 and then gives the classical functions.
HypValue f_pnu_eval(double a, double b, double c, double z, double p, double nu,
                    HypMethod method = HypMethod::integral, const QuadConfig& cfg = {},
                    const SeriesControl& ctl = {});
HypValue phi_pnu_eval(double b, double c, double z, double p, double nu,
                      HypMethod method = HypMethod::integral, const QuadConfig& cfg = {},
                      const SeriesControl& ctl = {});

// Values only; throw QuadratureError when the method did not converge.
double f_pnu(double a, double b, double c, double z, double p, double nu,
             HypMethod method = HypMethod::integral, const QuadConfig& cfg = {});
double phi_pnu(double b, double c, double z, double p, double nu,
               HypMethod method = HypMethod::integral, const QuadConfig& cfg = {});

// log F_{p,nu} and log Phi_{p,nu} from the integral (both are positive).
double log_f_pnu(double a, double b, double c, double z, double p, double nu,
                 const QuadConfig& cfg = {});
double log_phi_pnu(double b, double c, double z, double p, double nu,
                   const QuadConfig& cfg = {});

// Integer nu = n as a finite combination of p-extended functions:
//   sum_m (n+m)!/(m!(n-m)!) (2p)^-m B(b+m, c-b+m)/B(b, c-b) F_p(a, b+m; c+2m; z)
double f_pnu_int_reduction(double a, double b, double c, double z, double p, int n,
                           const QuadConfig& cfg = {});
double phi_pnu_int_reduction(double b, double c, double z, double p, int n,
                             const QuadConfig& cfg = {});

// n-th z-derivative: (a)_n (b)_n/(c)_n F_{p,nu}(a+n, b+n; c+n; z) and
// (b)_n/(c)_n Phi_{p,nu}(b+n; c+n; z).  n = 0 returns the function itself.
double f_pnu_derivative(double a, double b, double c, double z, double p, double nu, int n,
                        HypMethod method = HypMethod::integral, const QuadConfig& cfg = {});
double phi_pnu_derivative(double b, double c, double z, double p, double nu, int n,
                          HypMethod method = HypMethod::integral,
                          const QuadConfig& cfg = {});

// F_{p,nu}(a, b; c; 1) = B_nu(b, c-a-b; p)/B(b, c-b).
double f_pnu_gauss_sum(double a, double b, double c, double p, double nu,
                       const QuadConfig& cfg = {});

struct GeneratingCheckReport {
  double lhs = 0.0;  // partial sum of (a)_n t^n/n! F_{p,nu}(a+n, b; c; z)
  double rhs = 0.0;  // (1-t)^-a F_{p,nu}(a, b; c; z/(1-t))
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  int terms_used = 0;
  double last_term_abs = 0.0;
};

// Requires |t| < 1 and z/(1-t) < 1.
GeneratingCheckReport f_pnu_generating_check(double a, double b, double c, double z,
                                             double t, double p, double nu, int n_terms,
                                             const QuadConfig& cfg = {});

// Leading behavior for z -> +inf:
//   z^(b-c) e^(z-p) gamma(c-b, z; p z)/B(b, c-b).
double phi_pnu_asymptotic(double b, double c, double z, double p, double nu,
                          const QuadConfig& cfg = {});

// First n terms of the expansion for z -> -inf (z < -1):
//   (-z)^-a/B(b,c-b) sum_{k<n} (a)_k/k! z^-k B_nu(b-a-k, c-b; p).
double f_pnu_asymptotic(double a, double b, double c, double z, double p, double nu, int n,
                        const QuadConfig& cfg = {});

// Mellin transforms in p.  Closed forms:
//   F:   K(s,nu) B(b+s, c-b+s)/B(b,c-b) 2F1(a, b+s; c+2s; z)
//   Phi: K(s,nu) B(b+s, c-b+s)/B(b,c-b) 1F1(b+s; c+2s; z)
// with K(s,nu) = 2^(s-1)/sqrt(pi) Gamma((s-nu)/2) Gamma((s+nu+1)/2).
// The reports carry x = b, y = c - b.
double f_pnu_mellin_rhs(double a, double b, double c, double z, double s, double nu);
double phi_pnu_mellin_rhs(double b, double c, double z, double s, double nu);
MellinCheckReport f_pnu_mellin_check(double a, double b, double c, double z, double s,
                                     double nu, const QuadConfig& cfg = {});
MellinCheckReport phi_pnu_mellin_check(double b, double c, double z, double s, double nu,
                                       const QuadConfig& cfg = {});

}  // namespace xsf

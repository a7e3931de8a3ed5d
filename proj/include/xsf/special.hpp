#pragma once

// Classical building blocks shared by the extended functions.

namespace xsf {

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double last_term_abs = 0.0;
  bool converged = false;
};

// log Gamma(x) for x > 0; throws ParameterError otherwise.
double log_gamma(double x);

// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0.
double classical_beta(double x, double y);
double log_classical_beta(double x, double y);

// Rising factorial (a)_n; (a)_0 = 1.
double pochhammer(double a, int n);

// (n+m)! / (m! (n-m)!), the coefficient of (2z)^-m in the finite
// expansion of K_{n+1/2}.  Zero for m > n.
double half_integer_coefficient(int n, int m);

}  // namespace xsf

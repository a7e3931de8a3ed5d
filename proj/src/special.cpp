#include "xsf/special.hpp"

#include <cmath>
#include <math.h>
#include <string>

#include "xsf/errors.hpp"

namespace xsf {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError("log_gamma requires a finite positive argument, got " +
                         std::to_string(x));
  }
#if defined(__GLIBC__)
  // lgamma() writes the global signgam; the reentrant form keeps parallel
  // grid sweeps race-free.
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_classical_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw ParameterError("classical Beta requires x > 0 and y > 0");
  }
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

double classical_beta(double x, double y) {
  return std::exp(log_classical_beta(x, y));
}

double pochhammer(double a, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + k;
  return r;
}

double half_integer_coefficient(int n, int m) {
  if (m < 0 || m > n) return 0.0;
  double c = 1.0;
  for (int j = 0; j < m; ++j) {
    c *= static_cast<double>(n + j + 1) * (n - j) / (j + 1);
  }
  return c;
}

}  // namespace xsf

#pragma once

#include <optional>

#include "xsf/quadrature.hpp"

namespace xsf {

// Index nu of the kernel K_{nu+1/2}.  K is even in its order, so any finite
// nu is accepted and the evaluated order is |nu + 1/2|.
class KernelOrder {
 public:
  explicit KernelOrder(double nu);

  double nu() const { return nu_; }
  double bessel_order() const;
  // n when |nu + 1/2| = n + 1/2 (up to 1e-12), i.e. nu or -1-nu is a
  // non-negative integer; the kernel then has a closed form.
  std::optional<int> half_integer_index() const;

 private:
  double nu_;
};

// Closed form K_{1/2}(z) = sqrt(pi/(2z)) e^-z.
double k_half(double z);

// K_{n+1/2}(z) from the terminating sum of n+1 terms.
double k_half_integer(int n, double z);

// K_order(z) for real order from the integral
//   K_a(z) = int_0^inf exp(-z cosh u) cosh(a u) du,
// evaluated with a step-halving trapezoid sum on the exponentially scaled
// integrand (spectrally convergent for this analytic integrand).  No closed
// form shortcut is taken.  Underflows to zero for large z; use k_scaled
// there.
double k_real_order(double order, double z, const QuadConfig& cfg = {});

// e^z K_order(z).  Finite for every z > 0.  Half-integer orders use the
// terminating sum, large z the Hankel expansion, everything else the
// integral above.
double k_scaled(double order, double z);

// log(e^z K_order(z)); the form every extended-function integrand uses so
// that the kernel's exponential factor can be merged with the other
// exponents before a single exp().
double log_k_scaled(double order, double z);

}  // namespace xsf

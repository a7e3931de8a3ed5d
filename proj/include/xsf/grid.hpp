#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "xsf/quadrature.hpp"

namespace xsf {

enum class Execution { serial, parallel };

// Calls f(i) for i in [0, n), across OpenMP threads when exec is parallel.
// The first exception thrown by any call is rethrown after the loop; the
// remaining iterations still run.  Results must be written to per-index
// slots so the outcome does not depend on scheduling.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& f) {
  std::exception_ptr error;
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        if (!error) error = std::current_exception();
      }
    }
  } else {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(xsf_for_each_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

struct BetaPoint {
  double x;
  double y;
  double p;
  double nu;
};

// B_nu at every point.
std::vector<double> beta_nu_grid(const std::vector<BetaPoint>& points, Execution exec,
                                 const QuadConfig& cfg = {});

int max_threads();

}  // namespace xsf

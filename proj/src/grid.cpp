#include "xsf/grid.hpp"

#include <omp.h>

#include "xsf/extended_beta.hpp"

namespace xsf {

std::vector<double> beta_nu_grid(const std::vector<BetaPoint>& points, Execution exec,
                                 const QuadConfig& cfg) {
  std::vector<double> out(points.size());
  for_each_index(points.size(), exec, [&](std::size_t i) {
    const BetaPoint& pt = points[i];
    out[i] = beta_nu(pt.x, pt.y, pt.p, pt.nu, cfg);
  });
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace xsf

#pragma once

// Shared pieces of the Beta-type integrals over t in (0, 1).  They are
// written in the logistic coordinate t = 1/(1 + e^-u), where dt = t(1-t) du
// and the kernel argument p/(t(1-t)) = 4p cosh^2(u/2).  Features near t = 0
// or 1 then sit at |u| ~ log(1/p) and keep unit width however small p is.

#include <cmath>

namespace xsf::detail {

// exp(-w) is exactly zero in double precision well before log w reaches this.
inline constexpr double kMaxLogW = 700.0;

struct UnitPoint {
  double t;
  double omt;      // 1 - t
  double log_t;
  double log_omt;
  double log_w;    // log(p/(t(1-t)))
  double w;
  double excess;   // w - 4p, computed without cancellation
};

// u >= 0.  mirrored = false covers t in [1/2, 1), true covers (0, 1/2].
// w and excess are only filled when log_w <= kMaxLogW.
inline UnitPoint unit_point(double u, bool mirrored, double p, double log_p) {
  const double e = std::exp(-u);
  const double l1p = std::log1p(e);
  const double big = 1.0 / (1.0 + e);
  const double small = e / (1.0 + e);
  UnitPoint pt{};
  pt.t = mirrored ? small : big;
  pt.omt = mirrored ? big : small;
  pt.log_t = mirrored ? -u - l1p : -l1p;
  pt.log_omt = mirrored ? -l1p : -u - l1p;
  pt.log_w = log_p + u + 2.0 * l1p;
  if (pt.log_w <= kMaxLogW) {
    const double sh = std::sinh(0.5 * u);
    pt.excess = 4.0 * p * sh * sh;
    pt.w = 4.0 * p + pt.excess;
  }
  return pt;
}

}  // namespace xsf::detail

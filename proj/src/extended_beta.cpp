#include "xsf/extended_beta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xsf/bessel_kernel.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_gamma.hpp"
#include "unit_interval.hpp"

namespace xsf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
using detail::kMaxLogW;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ParameterError(std::string(name) + " must be finite");
}

void check_p(double p) {
  require_finite(p, "p");
  if (p < 0.0) throw ParameterError("p must be >= 0");
}

void check_positive_p(double p) {
  require_finite(p, "p");
  if (!(p > 0.0)) throw ParameterError("p must be > 0");
}

double log_prefactor(double p) { return 0.5 * std::log(2.0 * p / std::numbers::pi); }

// Halves of the unit-interval integrals on u >= 0.  The constant -4p of the
// kernel exponent is left out here and restored through the log scale of the
// result, so that for large p the integrand keeps its relative precision.
// The half covering t < 1/2 is the same integrand with x and y exchanged.
Integrand beta_p_half(double x, double y, double p) {
  const double log_p = std::log(p);
  return [=](double u) {
    const detail::UnitPoint pt = detail::unit_point(u, false, p, log_p);
    if (pt.log_w > kMaxLogW) return kNegInf;
    return x * pt.log_t + y * pt.log_omt - pt.excess;
  };
}

Integrand beta_nu_half(double x, double y, double p, double order) {
  const double log_p = std::log(p);
  const double c0 = log_prefactor(p);
  return [=](double u) {
    const detail::UnitPoint pt = detail::unit_point(u, false, p, log_p);
    if (pt.log_w > kMaxLogW) return kNegInf;
    return c0 + (x - 0.5) * pt.log_t + (y - 0.5) * pt.log_omt - pt.excess +
           log_k_scaled(order, pt.w);
  };
}

LogQuadResult restore_shift(LogQuadResult r, double p) {
  r.log_scale -= 4.0 * p;
  return r;
}

double converged_or_throw(const LogQuadResult& r, const char* what) {
  return converged_value(r, what);
}

}  // namespace

LogQuadResult beta_p_quad(double x, double y, double p, const QuadConfig& cfg) {
  require_finite(x, "x");
  require_finite(y, "y");
  check_p(p);
  if (p == 0.0) {
    // Exact classical value, reported as a converged zero-error result.
    LogQuadResult r;
    r.log_scale = log_classical_beta(x, y);
    r.normalized.value = 1.0;
    r.normalized.converged = true;
    return r;
  }
  return restore_shift(
      add_log_results(integrate_log_semi_infinite(beta_p_half(x, y, p), 0.0, cfg),
                      integrate_log_semi_infinite(beta_p_half(y, x, p), 0.0, cfg)),
      p);
}

double beta_p(double x, double y, double p, const QuadConfig& cfg) {
  if (p == 0.0) {
    require_finite(x, "x");
    require_finite(y, "y");
    return classical_beta(x, y);
  }
  return converged_or_throw(beta_p_quad(x, y, p, cfg), "beta_p");
}

LogQuadResult beta_nu_quad(double x, double y, double p, double nu, const QuadConfig& cfg) {
  require_finite(x, "x");
  require_finite(y, "y");
  require_finite(nu, "nu");
  check_p(p);
  if (p == 0.0) {
    if (nu != 0.0) throw ParameterError("p=0 requires nu=0");
    return beta_p_quad(x, y, 0.0, cfg);
  }
  const double order = KernelOrder(nu).bessel_order();
  return restore_shift(
      add_log_results(integrate_log_semi_infinite(beta_nu_half(x, y, p, order), 0.0, cfg),
                      integrate_log_semi_infinite(beta_nu_half(y, x, p, order), 0.0, cfg)),
      p);
}

double beta_nu(double x, double y, double p, double nu, const QuadConfig& cfg) {
  if (p == 0.0 && nu == 0.0) return beta_p(x, y, 0.0, cfg);
  return converged_or_throw(beta_nu_quad(x, y, p, nu, cfg), "beta_nu");
}

double log_beta_nu(double x, double y, double p, double nu, const QuadConfig& cfg) {
  return converged_log_value(beta_nu_quad(x, y, p, nu, cfg), "beta_nu");
}

LogQuadResult beta_nu_repr_quad(double x, double y, double p, double nu, BetaRepr repr,
                                const QuadConfig& cfg) {
  if (repr == BetaRepr::defining) return beta_nu_quad(x, y, p, nu, cfg);
  require_finite(x, "x");
  require_finite(y, "y");
  require_finite(nu, "nu");
  check_positive_p(p);
  const double order = KernelOrder(nu).bessel_order();
  const double c0 = log_prefactor(p);
  const double log_p = std::log(p);
  // Each substitution has p/(t(1-t)) = 4p + excess with the excess formed
  // directly; -4p goes into the log scale as in the defining form.
  auto kernel = [order, p](double log_w, double excess) {
    if (log_w > kMaxLogW) return kNegInf;
    return -excess + log_k_scaled(order, 4.0 * p + excess);
  };

  switch (repr) {
    case BetaRepr::trig: {
      // t = cos^2(theta) on (0, pi/2).
      auto log_f = [=](double th) {
        const double lc = std::log(std::cos(th));
        const double ls = std::log(std::sin(th));
        const double cot2 = 1.0 / std::tan(2.0 * th);
        const double k = kernel(log_p - 2.0 * (lc + ls), 4.0 * p * cot2 * cot2);
        if (k == kNegInf) return kNegInf;
        return std::numbers::ln2 + c0 + (2.0 * x - 2.0) * lc + (2.0 * y - 2.0) * ls + k;
      };
      return restore_shift(integrate_log_finite(log_f, 0.0, 0.5 * std::numbers::pi, cfg), p);
    }
    case BetaRepr::rational: {
      // t = u/(1+u) on (0, inf).
      auto log_f = [=](double u) {
        const double lu = std::log(u);
        const double l1u = std::log1p(u);
        const double log_w = log_p + 2.0 * l1u - lu;
        const double k = kernel(log_w, p * (1.0 - u) * (1.0 - u) / u);
        if (k == kNegInf) return kNegInf;
        return c0 + (x - 1.5) * lu + (1.0 - x - y) * l1u + k;
      };
      return restore_shift(integrate_log_semi_infinite(log_f, 0.0, cfg), p);
    }
    case BetaRepr::symmetric: {
      // t = (1+u)/2 on (-1, 1).
      auto log_f = [=](double u) {
        const double lp = std::log1p(u);
        const double lm = std::log1p(-u);
        const double log_w = log_p + 2.0 * std::numbers::ln2 - lp - lm;
        const double k = kernel(log_w, 4.0 * p * u * u / ((1.0 - u) * (1.0 + u)));
        if (k == kNegInf) return kNegInf;
        return c0 + (2.0 - x - y) * std::numbers::ln2 + (x - 1.5) * lp + (y - 1.5) * lm + k;
      };
      return restore_shift(integrate_log_finite(log_f, -1.0, 1.0, cfg), p);
    }
    case BetaRepr::defining:
      break;
  }
  return beta_nu_quad(x, y, p, nu, cfg);
}

double beta_nu_repr(double x, double y, double p, double nu, BetaRepr repr,
                    const QuadConfig& cfg) {
  return converged_or_throw(beta_nu_repr_quad(x, y, p, nu, repr, cfg), "beta_nu_repr");
}

double beta_int_nu(double x, double y, double p, int n, const QuadConfig& cfg) {
  check_positive_p(p);
  if (n < 0) throw ParameterError("n must be a non-negative integer");
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double coeff = half_integer_coefficient(n, m) * std::pow(2.0 * p, -m);
    sum += coeff * beta_p(x + m, y + m, p, cfg);
  }
  return sum;
}

namespace {

// term(n) for n = 0, 1, ...; stops after n_terms or, when ctl is given,
// once ctl->settle consecutive terms are below ctl->tail_tol * |sum|.
template <class Term>
SeriesResult sum_series(Term term, int n_terms, const SeriesControl* ctl, double rel_tol) {
  SeriesResult out;
  int quiet = 0;
  const int cap = ctl ? ctl->max_terms : n_terms;
  for (int n = 0; n < cap; ++n) {
    const double t = term(n);
    out.value += t;
    out.terms_used = n + 1;
    out.last_term_abs = std::abs(t);
    if (ctl) {
      quiet = out.last_term_abs <= ctl->tail_tol * std::abs(out.value) ? quiet + 1 : 0;
      if (quiet >= ctl->settle) break;
    }
  }
  const double tol = ctl ? ctl->tail_tol : rel_tol;
  out.converged = out.last_term_abs <= tol * std::abs(out.value);
  return out;
}

void check_series_args(double p, int n_terms) {
  check_positive_p(p);
  if (n_terms < 1) throw ParameterError("n_terms must be at least 1");
}

SeriesResult sum_1my(double x, double y, double p, double nu, int n_terms,
                     const SeriesControl* ctl, const QuadConfig& cfg) {
  require_finite(y, "y");
  // Running (y)_n / n!.
  double coeff = 1.0;
  int next = 0;
  auto term = [&](int n) {
    for (; next < n; ++next) coeff *= (y + next) / (next + 1.0);
    if (coeff == 0.0) return 0.0;
    return coeff * beta_nu(x + n, 1.0, p, nu, cfg);
  };
  return sum_series(term, n_terms, ctl, cfg.rel_tol);
}

SeriesResult sum_shift(double x, double y, double p, double nu, int n_terms,
                       const SeriesControl* ctl, const QuadConfig& cfg) {
  auto term = [&](int n) { return beta_nu(x + n, y + 1.0, p, nu, cfg); };
  return sum_series(term, n_terms, ctl, cfg.rel_tol);
}

}  // namespace

SeriesResult beta_nu_sum_1my(double x, double y, double p, double nu, int n_terms,
                             const QuadConfig& cfg) {
  check_series_args(p, n_terms);
  return sum_1my(x, y, p, nu, n_terms, nullptr, cfg);
}

SeriesResult beta_nu_sum_shift(double x, double y, double p, double nu, int n_terms,
                               const QuadConfig& cfg) {
  check_series_args(p, n_terms);
  return sum_shift(x, y, p, nu, n_terms, nullptr, cfg);
}

SeriesResult beta_nu_sum_1my_until(double x, double y, double p, double nu,
                                   const SeriesControl& ctl, const QuadConfig& cfg) {
  check_series_args(p, ctl.max_terms);
  return sum_1my(x, y, p, nu, ctl.max_terms, &ctl, cfg);
}

SeriesResult beta_nu_sum_shift_until(double x, double y, double p, double nu,
                                     const SeriesControl& ctl, const QuadConfig& cfg) {
  check_series_args(p, ctl.max_terms);
  return sum_shift(x, y, p, nu, ctl.max_terms, &ctl, cfg);
}

LogQuadResult beta_incomplete_nu_quad(double cutoff, double a, double b, double p,
                                      double nu, const QuadConfig& cfg) {
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw ParameterError("cutoff must lie in (0, 1)");
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(nu, "nu");
  check_positive_p(p);
  const double order = KernelOrder(nu).bessel_order();
  // Logistic coordinate of the cutoff.
  const double u_cut = std::log(cutoff) - std::log1p(-cutoff);
  // (0, 1/2] in t is u in (-inf, 0], i.e. the mirrored half on (0, inf).
  if (u_cut <= 0.0) {
    return restore_shift(
        integrate_log_semi_infinite(beta_nu_half(b, a, p, order), -u_cut, cfg), p);
  }
  LogQuadResult left = integrate_log_semi_infinite(beta_nu_half(b, a, p, order), 0.0, cfg);
  LogQuadResult right = integrate_log_finite(beta_nu_half(a, b, p, order), 0.0, u_cut, cfg);
  return restore_shift(add_log_results(left, right), p);
}

double beta_incomplete_nu(double cutoff, double a, double b, double p, double nu,
                          const QuadConfig& cfg) {
  return converged_or_throw(beta_incomplete_nu_quad(cutoff, a, b, p, nu, cfg),
                            "beta_incomplete_nu");
}

double log_mellin_kernel_factor(double s, double nu) {
  require_finite(s, "s");
  require_finite(nu, "nu");
  if (!(s - nu > 0.0)) throw ParameterError("Mellin transform requires s - nu > 0");
  if (!(s + nu > -1.0)) throw ParameterError("Mellin transform requires s + nu > -1");
  return (s - 1.0) * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) +
         log_gamma(0.5 * (s - nu)) + log_gamma(0.5 * (s + nu + 1.0));
}

double beta_nu_mellin_rhs(double x, double y, double s, double nu) {
  require_finite(x, "x");
  require_finite(y, "y");
  if (!(x + s > 0.0)) throw ParameterError("Mellin transform requires x + s > 0");
  if (!(y + s > 0.0)) throw ParameterError("Mellin transform requires y + s > 0");
  return std::exp(log_mellin_kernel_factor(s, nu) + log_classical_beta(x + s, y + s));
}

LogQuadResult mellin_integral(const Integrand& log_f, double s, const QuadConfig& cfg) {
  require_finite(s, "s");
  const double v_max = -std::log(std::numeric_limits<double>::min());
  auto near_zero = [&log_f, s, v_max](double v) {
    if (v > v_max) return kNegInf;
    return -s * v + log_f(std::exp(-v));
  };
  auto beyond_one = [&log_f, s](double p) { return (s - 1.0) * std::log(p) + log_f(p); };
  return add_log_results(integrate_log_semi_infinite(near_zero, 0.0, cfg),
                         integrate_log_semi_infinite(beyond_one, 1.0, cfg));
}

MellinCheckReport make_mellin_report(double s, double nu, double x, double y,
                                     double lhs, double rhs) {
  MellinCheckReport r;
  r.s = s;
  r.nu = nu;
  r.x = x;
  r.y = y;
  r.lhs_numeric = lhs;
  r.rhs_closed = rhs;
  r.abs_diff = std::abs(lhs - rhs);
  r.rel_diff = rhs != 0.0 ? r.abs_diff / std::abs(rhs) : r.abs_diff;
  return r;
}

MellinCheckReport beta_nu_mellin_check(double x, double y, double s, double nu,
                                       const QuadConfig& cfg) {
  const double rhs = beta_nu_mellin_rhs(x, y, s, nu);
  auto log_f = [=](double p) { return log_beta_nu(x, y, p, nu, cfg); };
  const double lhs = converged_value(mellin_integral(log_f, s, cfg), "beta_nu_mellin_check");
  return make_mellin_report(s, nu, x, y, lhs, rhs);
}

}  // namespace xsf

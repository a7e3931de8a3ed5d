#include "xsf/hypergeometric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "xsf/bessel_kernel.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_gamma.hpp"
#include "unit_interval.hpp"

namespace xsf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kClassicalMaxTerms = 1000000;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ParameterError(std::string(name) + " must be finite");
}

void check_bc(double b, double c) {
  require_finite(b, "b");
  require_finite(c, "c");
  if (!(c > b && b > 0.0)) throw ParameterError("requires c > b > 0");
}

void check_p_nu(double p, double nu) {
  require_finite(p, "p");
  require_finite(nu, "nu");
  if (p < 0.0) throw ParameterError("p must be >= 0");
  if (p == 0.0 && nu != 0.0) throw ParameterError("p=0 requires nu=0");
}

bool non_positive_integer(double c) { return c <= 0.0 && c == std::nearbyint(c); }

// Which weight multiplies the Beta-type integrand.
struct Weight {
  double p = 0.0;
  std::optional<double> bessel_order;  // empty: exp(-p/(t(1-t)))
};

// One half of the integral over t in (0, 1) in the logistic coordinate, with
// the constant -4p of the weight's exponent left for the caller.
// `confluent` selects exp(z t) instead of (1 - z t)^-a.
Integrand hyp_half(double a, double b, double c, double z, bool confluent, Weight wt,
                   bool mirrored) {
  const double delta = wt.bessel_order ? 0.5 : 0.0;
  const double log_p = wt.p > 0.0 ? std::log(wt.p) : kNegInf;
  const double c0 = wt.p > 0.0 ? 0.5 * std::log(2.0 * wt.p / std::numbers::pi) : 0.0;
  return [=](double u) {
    const detail::UnitPoint pt = detail::unit_point(u, mirrored, wt.p, log_p);
    if (wt.p > 0.0 && pt.log_w > detail::kMaxLogW) return kNegInf;
    double l = (b - delta) * pt.log_t + (c - b - delta) * pt.log_omt;
    if (confluent) {
      l += z * pt.t;
    } else {
      // 1 - z t written so that z = 1 keeps full relative accuracy.
      l -= a * std::log(pt.omt + (1.0 - z) * pt.t);
    }
    if (wt.p > 0.0) {
      l -= pt.excess;
      if (wt.bessel_order) l += c0 + log_k_scaled(*wt.bessel_order, pt.w);
    }
    return l;
  };
}

// The Euler-type integral divided by B(b, c-b).
LogQuadResult hyp_integral(double a, double b, double c, double z, bool confluent,
                           Weight wt, const QuadConfig& cfg) {
  LogQuadResult r = add_log_results(
      integrate_log_semi_infinite(hyp_half(a, b, c, z, confluent, wt, false), 0.0, cfg),
      integrate_log_semi_infinite(hyp_half(a, b, c, z, confluent, wt, true), 0.0, cfg));
  r.log_scale -= 4.0 * wt.p + log_classical_beta(b, c - b);
  return r;
}

void check_gauss_z(double a, double b, double c, double z, double p) {
  require_finite(a, "a");
  require_finite(z, "z");
  if (z > 1.0) throw DomainError("the integral representation requires z <= 1");
  if (z == 1.0 && !(p > 0.0) && !(c - a - b > 0.0)) {
    throw DomainError("z = 1 requires p > 0 or c - a - b > 0");
  }
}

Weight kernel_weight(double p, double nu) {
  Weight wt;
  wt.p = p;
  if (p > 0.0) wt.bessel_order = KernelOrder(nu).bessel_order();
  return wt;
}

HypValue from_integral(const LogQuadResult& r) {
  HypValue v;
  v.value = r.value();
  v.err_estimate = r.abs_err_estimate();
  v.converged = r.converged();
  v.method = HypMethod::integral;
  return v;
}

// sum_n coeff_n B_nu(b+n, c-b; p)/B(b, c-b) with coeff_{n+1} = coeff_n * ratio(n).
template <class Ratio>
HypValue beta_ratio_series(Ratio ratio, double b, double c, double p, double nu,
                           const QuadConfig& cfg, const SeriesControl& ctl) {
  const double log_norm = log_classical_beta(b, c - b);
  HypValue out;
  out.method = HypMethod::series;
  double sum = 0.0;
  double coeff = 1.0;
  double last = 0.0;
  int quiet = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    if (n > 0) coeff *= ratio(n - 1);
    double term = 0.0;
    if (coeff != 0.0) {
      term = coeff * std::exp(log_beta_nu(b + n, c - b, p, nu, cfg) - log_norm);
    }
    sum += term;
    last = std::abs(term);
    out.terms_used = n + 1;
    quiet = last <= ctl.tail_tol * std::abs(sum) ? quiet + 1 : 0;
    if (quiet >= ctl.settle) break;
  }
  out.value = sum;
  out.err_estimate = last;
  out.converged = last <= ctl.tail_tol * std::abs(sum);
  return out;
}

double value_or_throw(const HypValue& v, const char* what) {
  if (!v.converged) {
    throw QuadratureError(std::string(what) + ": " + to_string(v.method) +
                          " evaluation did not converge");
  }
  return v.value;
}

}  // namespace

const char* to_string(HypMethod m) {
  return m == HypMethod::series ? "series" : "integral";
}

SeriesResult gauss_2f1(double a, double b, double c, double z, double tol) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(z, "z");
  if (non_positive_integer(c)) throw ParameterError("c must not be a non-positive integer");
  if (!(std::abs(z) < 1.0)) throw DomainError("the 2F1 series requires |z| < 1");
  SeriesResult out;
  double term = 1.0;
  double sum = 1.0;
  out.terms_used = 1;
  for (int n = 0; n < kClassicalMaxTerms; ++n) {
    const double factor = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    term *= factor;
    sum += term;
    out.terms_used = n + 2;
    if (term == 0.0 || (std::abs(term) <= tol * std::abs(sum) && std::abs(factor) < 1.0)) {
      out.converged = true;
      break;
    }
  }
  out.value = sum;
  out.last_term_abs = std::abs(term);
  return out;
}

SeriesResult kummer_1f1(double b, double c, double z, double tol) {
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(z, "z");
  if (non_positive_integer(c)) throw ParameterError("c must not be a non-positive integer");
  const bool reflect = z < 0.0;
  const double bb = reflect ? c - b : b;
  const double zz = reflect ? -z : z;
  SeriesResult out;
  double term = 1.0;
  double sum = 1.0;
  out.terms_used = 1;
  for (int n = 0; n < kClassicalMaxTerms; ++n) {
    const double factor = (bb + n) / ((c + n) * (n + 1.0)) * zz;
    term *= factor;
    sum += term;
    out.terms_used = n + 2;
    if (term == 0.0 || (std::abs(term) <= tol * std::abs(sum) && std::abs(factor) < 1.0)) {
      out.converged = true;
      break;
    }
  }
  const double scale = reflect ? std::exp(z) : 1.0;
  out.value = sum * scale;
  out.last_term_abs = std::abs(term) * scale;
  return out;
}

double f_p(double a, double b, double c, double z, double p, const QuadConfig& cfg) {
  check_bc(b, c);
  check_p_nu(p, 0.0);
  check_gauss_z(a, b, c, z, p);
  Weight wt;
  wt.p = p;
  return converged_value(hyp_integral(a, b, c, z, false, wt, cfg), "f_p");
}

double phi_p(double b, double c, double z, double p, const QuadConfig& cfg) {
  check_bc(b, c);
  check_p_nu(p, 0.0);
  require_finite(z, "z");
  Weight wt;
  wt.p = p;
  return converged_value(hyp_integral(0.0, b, c, z, true, wt, cfg), "phi_p");
}

HypValue f_pnu_eval(double a, double b, double c, double z, double p, double nu,
                    HypMethod method, const QuadConfig& cfg, const SeriesControl& ctl) {
  check_bc(b, c);
  check_p_nu(p, nu);
  require_finite(a, "a");
  require_finite(z, "z");
  if (method == HypMethod::series) {
    if (!(std::abs(z) < 1.0)) throw DomainError("the series requires |z| < 1");
    auto ratio = [a, z](int n) { return (a + n) * z / (n + 1.0); };
    return beta_ratio_series(ratio, b, c, p, nu, cfg, ctl);
  }
  check_gauss_z(a, b, c, z, p);
  return from_integral(hyp_integral(a, b, c, z, false, kernel_weight(p, nu), cfg));
}

HypValue phi_pnu_eval(double b, double c, double z, double p, double nu, HypMethod method,
                      const QuadConfig& cfg, const SeriesControl& ctl) {
  check_bc(b, c);
  check_p_nu(p, nu);
  require_finite(z, "z");
  if (method == HypMethod::series) {
    auto ratio = [z](int n) { return z / (n + 1.0); };
    return beta_ratio_series(ratio, b, c, p, nu, cfg, ctl);
  }
  return from_integral(hyp_integral(0.0, b, c, z, true, kernel_weight(p, nu), cfg));
}

double f_pnu(double a, double b, double c, double z, double p, double nu, HypMethod method,
             const QuadConfig& cfg) {
  return value_or_throw(f_pnu_eval(a, b, c, z, p, nu, method, cfg), "f_pnu");
}

double phi_pnu(double b, double c, double z, double p, double nu, HypMethod method,
               const QuadConfig& cfg) {
  return value_or_throw(phi_pnu_eval(b, c, z, p, nu, method, cfg), "phi_pnu");
}

double log_f_pnu(double a, double b, double c, double z, double p, double nu,
                 const QuadConfig& cfg) {
  check_bc(b, c);
  check_p_nu(p, nu);
  check_gauss_z(a, b, c, z, p);
  return converged_log_value(hyp_integral(a, b, c, z, false, kernel_weight(p, nu), cfg),
                             "f_pnu");
}

double log_phi_pnu(double b, double c, double z, double p, double nu,
                   const QuadConfig& cfg) {
  check_bc(b, c);
  check_p_nu(p, nu);
  require_finite(z, "z");
  return converged_log_value(hyp_integral(0.0, b, c, z, true, kernel_weight(p, nu), cfg),
                             "phi_pnu");
}

namespace {

template <class Shifted>
double int_reduction(double b, double c, double p, int n, Shifted shifted) {
  check_bc(b, c);
  require_finite(p, "p");
  if (!(p > 0.0)) throw ParameterError("p must be > 0");
  if (n < 0) throw ParameterError("n must be a non-negative integer");
  const double log_norm = log_classical_beta(b, c - b);
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double beta_ratio = std::exp(log_classical_beta(b + m, c - b + m) - log_norm);
    sum += half_integer_coefficient(n, m) * std::pow(2.0 * p, -m) * beta_ratio * shifted(m);
  }
  return sum;
}

}  // namespace

double f_pnu_int_reduction(double a, double b, double c, double z, double p, int n,
                           const QuadConfig& cfg) {
  return int_reduction(b, c, p, n,
                       [&](int m) { return f_p(a, b + m, c + 2.0 * m, z, p, cfg); });
}

double phi_pnu_int_reduction(double b, double c, double z, double p, int n,
                             const QuadConfig& cfg) {
  return int_reduction(b, c, p, n,
                       [&](int m) { return phi_p(b + m, c + 2.0 * m, z, p, cfg); });
}

double f_pnu_derivative(double a, double b, double c, double z, double p, double nu, int n,
                        HypMethod method, const QuadConfig& cfg) {
  if (n < 0) throw ParameterError("derivative order must be non-negative");
  check_bc(b, c);
  const double factor = pochhammer(a, n) * pochhammer(b, n) / pochhammer(c, n);
  return factor * f_pnu(a + n, b + n, c + n, z, p, nu, method, cfg);
}

double phi_pnu_derivative(double b, double c, double z, double p, double nu, int n,
                          HypMethod method, const QuadConfig& cfg) {
  if (n < 0) throw ParameterError("derivative order must be non-negative");
  check_bc(b, c);
  const double factor = pochhammer(b, n) / pochhammer(c, n);
  return factor * phi_pnu(b + n, c + n, z, p, nu, method, cfg);
}

double f_pnu_gauss_sum(double a, double b, double c, double p, double nu,
                       const QuadConfig& cfg) {
  check_bc(b, c);
  check_p_nu(p, nu);
  require_finite(a, "a");
  if (p == 0.0 && !(c - a - b > 0.0)) {
    throw ParameterError("p=0 requires c - a - b > 0");
  }
  return beta_nu(b, c - a - b, p, nu, cfg) / classical_beta(b, c - b);
}

GeneratingCheckReport f_pnu_generating_check(double a, double b, double c, double z,
                                             double t, double p, double nu, int n_terms,
                                             const QuadConfig& cfg) {
  require_finite(t, "t");
  if (!(std::abs(t) < 1.0)) throw ParameterError("the generating function requires |t| < 1");
  if (n_terms < 1) throw ParameterError("n_terms must be at least 1");
  const double zt = z / (1.0 - t);
  if (!(zt < 1.0)) throw DomainError("the generating function requires z/(1-t) < 1");

  GeneratingCheckReport r;
  double coeff = 1.0;  // (a)_n t^n / n!
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) coeff *= (a + n - 1.0) * t / n;
    const double term = coeff == 0.0 ? 0.0 : coeff * f_pnu(a + n, b, c, z, p, nu,
                                                             HypMethod::integral, cfg);
    r.lhs += term;
    r.last_term_abs = std::abs(term);
    r.terms_used = n + 1;
  }
  r.rhs = std::pow(1.0 - t, -a) * f_pnu(a, b, c, zt, p, nu, HypMethod::integral, cfg);
  r.abs_diff = std::abs(r.lhs - r.rhs);
  r.rel_diff = r.rhs != 0.0 ? r.abs_diff / std::abs(r.rhs) : r.abs_diff;
  return r;
}

double phi_pnu_asymptotic(double b, double c, double z, double p, double nu,
                          const QuadConfig& cfg) {
  check_bc(b, c);
  require_finite(nu, "nu");
  require_finite(z, "z");
  require_finite(p, "p");
  if (!(p > 0.0)) throw ParameterError("p must be > 0");
  if (!(z > 0.0)) throw ParameterError("the large-z form requires z > 0");
  const double log_gamma_part =
      converged_log_value(gamma_lower_p_quad(c - b, z, p * z, cfg), "phi_pnu_asymptotic");
  return std::exp((b - c) * std::log(z) + z - p + log_gamma_part -
                  log_classical_beta(b, c - b));
}

double f_pnu_asymptotic(double a, double b, double c, double z, double p, double nu, int n,
                        const QuadConfig& cfg) {
  check_bc(b, c);
  require_finite(a, "a");
  require_finite(z, "z");
  require_finite(p, "p");
  if (!(p > 0.0)) throw ParameterError("p must be > 0");
  if (!(z < -1.0)) throw ParameterError("the large-|z| expansion requires z < -1");
  if (n < 1) throw ParameterError("n must be at least 1");
  double sum = 0.0;
  double coeff = 1.0;  // (a)_k z^-k / k!
  for (int k = 0; k < n; ++k) {
    if (k > 0) coeff *= (a + k - 1.0) / (k * z);
    sum += coeff * beta_nu(b - a - k, c - b, p, nu, cfg);
  }
  return std::pow(-z, -a) * sum / classical_beta(b, c - b);
}

namespace {

double log_hyp_mellin_factor(double b, double c, double s, double nu) {
  require_finite(s, "s");
  if (!(b + s > 0.0)) throw ParameterError("Mellin transform requires b + s > 0");
  if (!(c - b + s > 0.0)) throw ParameterError("Mellin transform requires c - b + s > 0");
  return log_mellin_kernel_factor(s, nu) + log_classical_beta(b + s, c - b + s) -
         log_classical_beta(b, c - b);
}

}  // namespace

double f_pnu_mellin_rhs(double a, double b, double c, double z, double s, double nu) {
  check_bc(b, c);
  const double factor = std::exp(log_hyp_mellin_factor(b, c, s, nu));
  const SeriesResult f = gauss_2f1(a, b + s, c + 2.0 * s, z);
  if (!f.converged) throw QuadratureError("2F1 series did not converge");
  return factor * f.value;
}

double phi_pnu_mellin_rhs(double b, double c, double z, double s, double nu) {
  check_bc(b, c);
  const double factor = std::exp(log_hyp_mellin_factor(b, c, s, nu));
  const SeriesResult f = kummer_1f1(b + s, c + 2.0 * s, z);
  if (!f.converged) throw QuadratureError("1F1 series did not converge");
  return factor * f.value;
}

MellinCheckReport f_pnu_mellin_check(double a, double b, double c, double z, double s,
                                     double nu, const QuadConfig& cfg) {
  const double rhs = f_pnu_mellin_rhs(a, b, c, z, s, nu);
  auto log_f = [=](double p) { return log_f_pnu(a, b, c, z, p, nu, cfg); };
  const double lhs = converged_value(mellin_integral(log_f, s, cfg), "f_pnu_mellin_check");
  return make_mellin_report(s, nu, b, c - b, lhs, rhs);
}

MellinCheckReport phi_pnu_mellin_check(double b, double c, double z, double s, double nu,
                                       const QuadConfig& cfg) {
  const double rhs = phi_pnu_mellin_rhs(b, c, z, s, nu);
  auto log_f = [=](double p) { return log_phi_pnu(b, c, z, p, nu, cfg); };
  const double lhs = converged_value(mellin_integral(log_f, s, cfg), "phi_pnu_mellin_check");
  return make_mellin_report(s, nu, b, c - b, lhs, rhs);
}

}  // namespace xsf

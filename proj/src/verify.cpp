#include "xsf/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json_out.hpp"
#include "xsf/distribution.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_beta.hpp"
#include "xsf/extended_gamma.hpp"
#include "xsf/hypergeometric.hpp"

namespace xsf {

double CaseSpec::num(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ParameterError("case " + id + ": missing parameter " + key);
  const std::string& s = it->second;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("case " + id + ": parameter " + key + " is not a number: " + s);
  }
  return v;
}

double CaseSpec::num(const std::string& key, double fallback) const {
  return params.count(key) ? num(key) : fallback;
}

std::string CaseSpec::str(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

const char* to_string(MetricKind k) {
  switch (k) {
    case MetricKind::rel_err: return "rel_err";
    case MetricKind::decay_ratio: return "decay_ratio";
    case MetricKind::z_score: return "z_score";
    case MetricKind::ks_ratio: return "ks_ratio";
  }
  return "rel_err";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "mellin", "reductions",
                                                 "asymptotics", "distribution", "all"};
  return names;
}

std::vector<CaseSpec> parse_manifest(std::istream& in) {
  std::vector<CaseSpec> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    CaseSpec c;
    if (!(fields >> c.suite)) continue;
    if (!(fields >> c.id >> c.kind)) {
      throw ParameterError("manifest line " + std::to_string(line_no) +
                           ": expected suite, case-id and kind");
    }
    bool has_tol = false;
    std::string kv;
    while (fields >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParameterError("manifest line " + std::to_string(line_no) +
                             ": expected key=value, got " + kv);
      }
      c.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (c.params.count("tol")) {
      c.tol = c.num("tol");
      c.params.erase("tol");
      has_tol = true;
    }
    if (c.params.count("floor")) {
      c.floor = c.num("floor");
      c.params.erase("floor");
    }
    if (!has_tol) {
      throw ParameterError("manifest line " + std::to_string(line_no) + ": missing tol=");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CaseSpec> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open manifest " + path);
  return parse_manifest(in);
}

namespace {

double rel(double got, double expected) {
  const double d = std::abs(got - expected);
  return expected != 0.0 ? d / std::abs(expected) : d;
}

void compare(CaseOutcome& o, double got, double expected, double threshold) {
  o.got = got;
  o.expected = expected;
  o.metric_kind = MetricKind::rel_err;
  o.metric = rel(got, expected);
  o.threshold = threshold;
  o.passed = o.metric <= threshold;
}

// Largest ratio of consecutive entries; < 1 means strictly decreasing.
void decay(CaseOutcome& o, const std::vector<double>& errs) {
  double worst = 0.0;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    worst = std::max(worst, errs[i] / errs[i - 1]);
  }
  o.metric_kind = MetricKind::decay_ratio;
  o.metric = worst;
  o.threshold = 1.0;
  o.expected = errs.front();
  o.got = errs.back();
  o.passed = worst < 1.0;
}

BetaRepr repr_of(const CaseSpec& c) {
  const std::string r = c.str("repr");
  if (r == "trig") return BetaRepr::trig;
  if (r == "rational") return BetaRepr::rational;
  if (r == "symmetric") return BetaRepr::symmetric;
  if (r == "defining") return BetaRepr::defining;
  throw ParameterError("case " + c.id + ": unknown repr " + r);
}

bool is_hyp(const CaseSpec& c) {
  const std::string fn = c.str("fn", "hyp");
  if (fn == "hyp") return true;
  if (fn == "chyp") return false;
  throw ParameterError("case " + c.id + ": unknown fn " + fn);
}

SeriesControl series_control(const CaseSpec& c) {
  SeriesControl ctl;
  ctl.max_terms = static_cast<int>(c.num("max_terms", 5000));
  ctl.tail_tol = c.num("tail_tol", 1e-12);
  return ctl;
}

// Threshold for a truncated series: max(tol, 10 * last term), relative.
double series_threshold(double tol, double last, double reference) {
  return std::max(tol, 10.0 * last / std::abs(reference));
}

struct Context {
  const CaseSpec& c;
  double tol;
  const QuadConfig& cfg;
};

using Runner = std::function<void(const Context&, CaseOutcome&)>;

// Cumulative distribution at the sorted points from the sum of the
// density's integrals between neighbours.
std::vector<double> cdf_at_sorted(const ExtBetaDistribution& d, const std::vector<double>& xs,
                                  const QuadConfig& cfg) {
  std::vector<double> inc(xs.size());
  auto lpdf = [&d](double t) { return d.log_pdf(t); };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = i == 0 ? 0.0 : xs[i - 1];
    inc[i] = lo < xs[i] ? integrate_log_finite(lpdf, lo, xs[i], cfg).value() : 0.0;
  }
  std::partial_sum(inc.begin(), inc.end(), inc.begin());
  return inc;
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      // Extended Beta identities.
      {"functional",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p"), nu = c.num("nu");
         compare(o, beta_nu(x + 1, y, p, nu, k.cfg) + beta_nu(x, y + 1, p, nu, k.cfg),
                 beta_nu(x, y, p, nu, k.cfg), k.tol);
       }},
      {"sum_1my",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p"), nu = c.num("nu");
         const SeriesResult s = c.params.count("terms")
                                    ? beta_nu_sum_1my(x, y, p, nu, (int)c.num("terms"), k.cfg)
                                    : beta_nu_sum_1my_until(x, y, p, nu, series_control(c), k.cfg);
         const double expected = beta_nu(x, 1.0 - y, p, nu, k.cfg);
         compare(o, s.value, expected, series_threshold(k.tol, s.last_term_abs, expected));
       }},
      {"sum_shift",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p"), nu = c.num("nu");
         const SeriesResult s =
             c.params.count("terms")
                 ? beta_nu_sum_shift(x, y, p, nu, (int)c.num("terms"), k.cfg)
                 : beta_nu_sum_shift_until(x, y, p, nu, series_control(c), k.cfg);
         const double expected = beta_nu(x, y, p, nu, k.cfg);
         compare(o, s.value, expected, series_threshold(k.tol, s.last_term_abs, expected));
       }},
      {"symmetry",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p"), nu = c.num("nu");
         compare(o, beta_nu(y, x, p, nu, k.cfg), beta_nu(x, y, p, nu, k.cfg), k.tol);
       }},
      {"repr",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p"), nu = c.num("nu");
         const LogQuadResult alt = beta_nu_repr_quad(x, y, p, nu, repr_of(c), k.cfg);
         const LogQuadResult def = beta_nu_quad(x, y, p, nu, k.cfg);
         const double expected = converged_value(def, "beta_nu");
         const double got = converged_value(alt, "beta_nu_repr");
         // Within twice the combined error estimates.
         compare(o, got, expected,
                 2.0 * (alt.abs_err_estimate() + def.abs_err_estimate()) / std::abs(expected));
       }},
      {"beta_nu0",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p");
         compare(o, beta_nu(x, y, p, 0.0, k.cfg), beta_p(x, y, p, k.cfg), k.tol);
       }},
      {"beta_int",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double x = c.num("x"), y = c.num("y"), p = c.num("p");
         const int n = static_cast<int>(c.num("n"));
         compare(o, beta_int_nu(x, y, p, n, k.cfg), beta_nu(x, y, p, n, k.cfg), k.tol);
       }},

      // Extended hypergeometric functions.
      {"pfaff",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), cc = c.num("c"), z = c.num("z"),
                      p = c.num("p"), nu = c.num("nu");
         compare(o,
                 std::pow(1.0 - z, -a) * f_pnu(a, cc - b, cc, z / (z - 1.0), p, nu,
                                               HypMethod::integral, k.cfg),
                 f_pnu(a, b, cc, z, p, nu, HypMethod::integral, k.cfg), k.tol);
       }},
      {"kummer",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z"), p = c.num("p"),
                      nu = c.num("nu");
         compare(o,
                 std::exp(z) * phi_pnu(cc - b, cc, -z, p, nu, HypMethod::integral, k.cfg),
                 phi_pnu(b, cc, z, p, nu, HypMethod::integral, k.cfg), k.tol);
       }},
      {"gauss_sum",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), cc = c.num("c"), p = c.num("p"),
                      nu = c.num("nu");
         compare(o, f_pnu(a, b, cc, 1.0, p, nu, HypMethod::integral, k.cfg),
                 f_pnu_gauss_sum(a, b, cc, p, nu, k.cfg), k.tol);
       }},
      {"gauss_classical",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         compare(o, f_pnu_gauss_sum(c.num("a"), c.num("b"), c.num("c"), 0.0, 0.0, k.cfg),
                 c.num("expect"), k.tol);
       }},
      {"generating",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const GeneratingCheckReport r = f_pnu_generating_check(
             c.num("a"), c.num("b"), c.num("c"), c.num("z"), c.num("t"), c.num("p"),
             c.num("nu"), static_cast<int>(c.num("terms", 20)), k.cfg);
         compare(o, r.lhs, r.rhs, series_threshold(k.tol, r.last_term_abs, r.rhs));
       }},
      {"derivative",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const bool hyp = is_hyp(c);
         const int n = static_cast<int>(c.num("n"));
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z"), p = c.num("p"),
                      nu = c.num("nu");
         const double a = hyp ? c.num("a") : 0.0;
         const double h = c.num("h", n == 1 ? 1e-5 : 1e-3);
         QuadConfig tight = k.cfg;
         tight.rel_tol = std::min(tight.rel_tol, 1e-13);
         auto f = [&](double zz) {
           return hyp ? f_pnu(a, b, cc, zz, p, nu, HypMethod::integral, tight)
                      : phi_pnu(b, cc, zz, p, nu, HypMethod::integral, tight);
         };
         double fd = 0.0;
         if (n == 1) {
           fd = (f(z + h) - f(z - h)) / (2.0 * h);
         } else if (n == 2) {
           fd = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
         } else {
           throw ParameterError("case " + c.id + ": finite differences cover n = 1, 2");
         }
         const double analytic = hyp ? f_pnu_derivative(a, b, cc, z, p, nu, n,
                                                         HypMethod::integral, k.cfg)
                                     : phi_pnu_derivative(b, cc, z, p, nu, n,
                                                          HypMethod::integral, k.cfg);
         compare(o, analytic, fd, k.tol);
       }},
      {"hyp_nu0",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), cc = c.num("c"), z = c.num("z"),
                      p = c.num("p");
         compare(o, f_pnu(a, b, cc, z, p, 0.0, HypMethod::integral, k.cfg),
                 f_p(a, b, cc, z, p, k.cfg), k.tol);
       }},
      {"chyp_nu0",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z"), p = c.num("p");
         compare(o, phi_pnu(b, cc, z, p, 0.0, HypMethod::integral, k.cfg),
                 phi_p(b, cc, z, p, k.cfg), k.tol);
       }},
      {"classical",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z");
         if (is_hyp(c)) {
           const double a = c.num("a");
           const double expected =
               c.params.count("expect") ? c.num("expect") : gauss_2f1(a, b, cc, z).value;
           compare(o, f_pnu(a, b, cc, z, 0.0, 0.0, HypMethod::integral, k.cfg), expected,
                   k.tol);
         } else {
           const double expected =
               c.params.count("expect") ? c.num("expect") : kummer_1f1(b, cc, z).value;
           compare(o, phi_pnu(b, cc, z, 0.0, 0.0, HypMethod::integral, k.cfg), expected,
                   k.tol);
         }
       }},
      {"int",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const int n = static_cast<int>(c.num("n"));
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z"), p = c.num("p");
         if (is_hyp(c)) {
           const double a = c.num("a");
           compare(o, f_pnu_int_reduction(a, b, cc, z, p, n, k.cfg),
                   f_pnu(a, b, cc, z, p, n, HypMethod::integral, k.cfg), k.tol);
         } else {
           compare(o, phi_pnu_int_reduction(b, cc, z, p, n, k.cfg),
                   phi_pnu(b, cc, z, p, n, HypMethod::integral, k.cfg), k.tol);
         }
       }},
      {"series_integral",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z"), p = c.num("p"),
                      nu = c.num("nu");
         HypValue s, i;
         if (is_hyp(c)) {
           const double a = c.num("a");
           s = f_pnu_eval(a, b, cc, z, p, nu, HypMethod::series, k.cfg);
           i = f_pnu_eval(a, b, cc, z, p, nu, HypMethod::integral, k.cfg);
         } else {
           s = phi_pnu_eval(b, cc, z, p, nu, HypMethod::series, k.cfg);
           i = phi_pnu_eval(b, cc, z, p, nu, HypMethod::integral, k.cfg);
         }
         if (!s.converged || !i.converged) {
           throw QuadratureError("series or integral did not converge");
         }
         compare(o, s.value, i.value, k.tol);
       }},

      // Extended incomplete gamma functions.
      {"gamma_decomp",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double al = c.num("alpha"), x = c.num("x"), p = c.num("p");
         compare(o, gamma_lower_p(al, x, p, k.cfg) + gamma_upper_p(al, x, p, k.cfg),
                 gamma_total_p(al, p), k.tol);
       }},
      {"gamma_nu0",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double al = c.num("alpha"), x = c.num("x"), p = c.num("p");
         const double lo = rel(gamma_lower_nu(al, x, p, 0.0, k.cfg), gamma_lower_p(al, x, p, k.cfg));
         compare(o, gamma_upper_nu(al, x, p, 0.0, k.cfg), gamma_upper_p(al, x, p, k.cfg), k.tol);
         o.metric = std::max(o.metric, lo);
         o.passed = o.metric <= o.threshold;
       }},
      {"gamma_split",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double al = c.num("alpha"), p = c.num("p"), nu = c.num("nu");
         const double x1 = c.num("x1"), x2 = c.num("x2");
         compare(o, gamma_lower_nu(al, x2, p, nu, k.cfg) + gamma_upper_nu(al, x2, p, nu, k.cfg),
                 gamma_lower_nu(al, x1, p, nu, k.cfg) + gamma_upper_nu(al, x1, p, nu, k.cfg),
                 k.tol);
       }},

      // Mellin transforms.
      {"mellin_beta",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const MellinCheckReport r =
             beta_nu_mellin_check(c.num("x"), c.num("y"), c.num("s"), c.num("nu"), k.cfg);
         compare(o, r.lhs_numeric, r.rhs_closed, k.tol);
       }},
      {"mellin_hyp",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const MellinCheckReport r = f_pnu_mellin_check(
             c.num("a"), c.num("b"), c.num("c"), c.num("z"), c.num("s"), c.num("nu"), k.cfg);
         compare(o, r.lhs_numeric, r.rhs_closed, k.tol);
       }},
      {"mellin_chyp",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const MellinCheckReport r = phi_pnu_mellin_check(c.num("b"), c.num("c"), c.num("z"),
                                                          c.num("s"), c.num("nu"), k.cfg);
         compare(o, r.lhs_numeric, r.rhs_closed, k.tol);
       }},

      // Asymptotic forms: the errors must shrink.
      {"asym_chyp",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), p = c.num("p"), nu = c.num("nu");
         std::vector<double> errs;
         for (double z : {5.0, 10.0, 20.0, 40.0}) {
           errs.push_back(rel(phi_pnu_asymptotic(b, cc, z, p, nu, k.cfg),
                              phi_pnu(b, cc, z, p, nu, HypMethod::integral, k.cfg)));
         }
         decay(o, errs);
       }},
      {"asym_hyp",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), cc = c.num("c"), p = c.num("p"),
                      nu = c.num("nu");
         const int n = static_cast<int>(c.num("n"));
         std::vector<double> errs;
         for (double z : {-50.0, -100.0}) {
           errs.push_back(rel(f_pnu_asymptotic(a, b, cc, z, p, nu, n, k.cfg),
                              f_pnu(a, b, cc, z, p, nu, HypMethod::integral, k.cfg)));
         }
         decay(o, errs);
       }},
      {"asym_hyp_order",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), cc = c.num("c"), p = c.num("p"),
                      nu = c.num("nu"), z = c.num("z", -50.0);
         const double exact = f_pnu(a, b, cc, z, p, nu, HypMethod::integral, k.cfg);
         std::vector<double> errs;
         for (int n = 1; n <= 3; ++n) {
           errs.push_back(rel(f_pnu_asymptotic(a, b, cc, z, p, nu, n, k.cfg), exact));
         }
         decay(o, errs);
       }},
      {"asym_chyp_classical",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double b = c.num("b"), cc = c.num("c"), z = c.num("z");
         const double classical =
             std::exp((b - cc) * std::log(z) + z + log_gamma(cc) - log_gamma(b));
         compare(o, phi_pnu_asymptotic(b, cc, z, c.num("p", 1e-8), 0.0, k.cfg), classical,
                 k.tol);
       }},

      // Extended Beta distribution.
      {"dist_norm",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const ExtBetaDistribution d(c.num("a"), c.num("b"), c.num("p"), c.num("nu"), k.cfg);
         const LogQuadResult r =
             integrate_log_finite([&d](double t) { return d.log_pdf(t); }, 0.0, 1.0, k.cfg);
         compare(o, converged_value(r, "density integral"), 1.0, k.tol);
       }},
      {"dist_moments",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const double a = c.num("a"), b = c.num("b"), p = c.num("p"), nu = c.num("nu");
         const ExtBetaDistribution d(a, b, p, nu, k.cfg);
         const double b0 = beta_nu(a, b, p, nu, k.cfg);
         const double b1 = beta_nu(a + 1, b, p, nu, k.cfg);
         const double b2 = beta_nu(a + 2, b, p, nu, k.cfg);
         const double var_beta = (b0 * b2 - b1 * b1) / (b0 * b0);
         const double m1 = d.moment(1.0);
         const double m2 = d.moment(2.0);
         compare(o, d.variance(), m2 - m1 * m1, k.tol);
         o.metric = std::max({o.metric, rel(d.mean(), m1), rel(d.variance(), var_beta),
                              rel(d.moment(0.0), 1.0)});
         o.passed = o.metric <= o.threshold;
       }},
      {"dist_cdf",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const ExtBetaDistribution d(c.num("a"), c.num("b"), c.num("p"), c.num("nu"), k.cfg);
         const double x = c.num("x");
         const LogQuadResult r =
             integrate_log_finite([&d](double t) { return d.log_pdf(t); }, 0.0, x, k.cfg);
         compare(o, d.cdf(x), converged_value(r, "density integral"), k.tol);
       }},
      {"dist_mc",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const ExtBetaDistribution d(c.num("a"), c.num("b"), c.num("p"), c.num("nu"), k.cfg);
         const long n = static_cast<long>(c.num("n"));
         const auto seed = static_cast<std::uint64_t>(c.num("seed"));
         const SampleResult s = d.sample(seed, n, Execution::serial);
         const double dn = static_cast<double>(n);
         double m = 0.0;
         for (double v : s.values) m += v;
         m /= dn;
         double m2 = 0.0, m4 = 0.0;
         for (double v : s.values) {
           const double e = (v - m) * (v - m);
           m2 += e;
           m4 += e * e;
         }
         const double var = m2 / (dn - 1.0);
         m4 /= dn;
         const double mean = d.mean();
         const double variance = d.variance();
         const double z_mean = (m - mean) / std::sqrt(var / dn);
         const double z_var = (var - variance) / std::sqrt((m4 - var * var) / dn);
         double worst = std::max(std::abs(z_mean), std::abs(z_var));
         if (c.params.count("x")) {
           const double x = c.num("x");
           const double f = d.cdf(x);
           const double emp = static_cast<double>(std::count_if(
                                  s.values.begin(), s.values.end(),
                                  [x](double v) { return v <= x; })) /
                              dn;
           worst = std::max(worst, std::abs(emp - f) / std::sqrt(f * (1.0 - f) / dn));
         }
         o.metric_kind = MetricKind::z_score;
         o.expected = mean;
         o.got = m;
         o.metric = worst;
         o.threshold = 3.0;
         o.passed = worst <= 3.0;
       }},
      {"dist_ks",
       [](const Context& k, CaseOutcome& o) {
         const auto& c = k.c;
         const ExtBetaDistribution d(c.num("a"), c.num("b"), c.num("p"), c.num("nu"), k.cfg);
         const long n = static_cast<long>(c.num("n"));
         const auto seed = static_cast<std::uint64_t>(c.num("seed"));
         std::vector<double> xs = d.sample(seed, n, Execution::serial).values;
         std::sort(xs.begin(), xs.end());
         const std::vector<double> f = cdf_at_sorted(d, xs, k.cfg);
         const double dn = static_cast<double>(n);
         double stat = 0.0;
         for (std::size_t i = 0; i < xs.size(); ++i) {
           stat = std::max({stat, (i + 1) / dn - f[i], f[i] - i / dn});
         }
         // Asymptotic Kolmogorov critical value at the 1% level.
         const double critical = std::sqrt(-0.5 * std::log(0.005)) / std::sqrt(dn);
         o.metric_kind = MetricKind::ks_ratio;
         o.expected = critical;
         o.got = stat;
         o.metric = stat / critical;
         o.threshold = 1.0;
         o.passed = o.metric <= 1.0;
       }},
  };
  return table;
}

}  // namespace

CaseOutcome run_case(const CaseSpec& spec, std::optional<double> tol_override,
                     const QuadConfig& cfg) {
  CaseOutcome o;
  o.suite = spec.suite;
  o.id = spec.id;
  o.kind = spec.kind;
  const double tol = std::max(tol_override.value_or(spec.tol), spec.floor);
  o.threshold = tol;
  try {
    const auto it = runners().find(spec.kind);
    if (it == runners().end()) throw ParameterError("unknown case kind " + spec.kind);
    it->second(Context{spec, tol, cfg}, o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail = e.what();
  }
  if (std::isnan(o.metric)) o.passed = false;
  return o;
}

VerifyReport run_suite(const std::vector<CaseSpec>& manifest, const std::string& suite,
                       std::optional<double> tol_override, Execution exec,
                       const QuadConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ParameterError("unknown suite " + suite);
  }
  std::vector<const CaseSpec*> chosen;
  for (const auto& c : manifest) {
    if (suite == "all" || c.suite == suite) chosen.push_back(&c);
  }
  VerifyReport report;
  report.suite = suite;
  report.cases.resize(chosen.size());
  for_each_index(chosen.size(), exec, [&](std::size_t i) {
    report.cases[i] = run_case(*chosen[i], tol_override, cfg);
  });
  std::sort(report.cases.begin(), report.cases.end(),
            [](const CaseOutcome& l, const CaseOutcome& r) { return l.id < r.id; });
  report.cases_run = static_cast<int>(report.cases.size());
  for (const auto& o : report.cases) {
    if (o.passed) ++report.cases_passed;
    if (o.metric_kind == MetricKind::rel_err && std::isfinite(o.metric)) {
      report.worst_rel_err = std::max(report.worst_rel_err, o.metric);
    }
  }
  return report;
}

std::string report_json(const VerifyReport& report) {
  detail::JsonOut j;
  j.begin_object();
  j.field("suite", report.suite);
  j.field("cases_run", report.cases_run);
  j.field("cases_passed", report.cases_passed);
  j.field("worst_rel_err", report.worst_rel_err);
  j.key("failures").begin_array();
  for (const auto& o : report.cases) {
    if (o.passed) continue;
    j.begin_object();
    j.field("id", o.id);
    j.field("expected", o.expected);
    j.field("got", o.got);
    j.field("rel_err", o.metric_kind == MetricKind::rel_err ? o.metric
                                                             : std::numeric_limits<double>::quiet_NaN());
    j.field("metric_kind", to_string(o.metric_kind));
    j.field("metric", o.metric);
    j.field("threshold", o.threshold);
    j.field("detail", o.detail);
    j.end_object();
  }
  j.end_array();
  j.key("cases").begin_array();
  for (const auto& o : report.cases) {
    j.begin_object();
    j.field("id", o.id);
    j.field("suite", o.suite);
    j.field("kind", o.kind);
    j.field("passed", o.passed);
    j.field("metric_kind", to_string(o.metric_kind));
    j.field("metric", o.metric);
    j.field("threshold", o.threshold);
    j.field("expected", o.expected);
    j.field("got", o.got);
    if (!o.detail.empty()) j.field("detail", o.detail);
    j.end_object();
  }
  j.end_array();
  j.end_object();
  return j.str() + "\n";
}

}  // namespace xsf

#include "xsf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "xsf/errors.hpp"

namespace xsf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinNormal = std::numeric_limits<double>::min();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kronrod abscissae; odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kRulePoints = 15;

struct Panel {
  double a;
  double b;
  double value;
  double err;
  bool splittable;
};

double checked(const Integrand& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    throw QuadratureError("integrand not finite at t = " + std::to_string(t));
  }
  return v;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  const double fc = checked(f, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double lo = checked(f, center - dx);
    const double hi = checked(f, center + dx);
    f1[j] = lo;
    f2[j] = hi;
    resk += kWgk[j] * (lo + hi);
    resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) resg += kWg[j / 2] * (lo + hi);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }

  const double ah = std::abs(half);
  const double result = resk * half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kMinNormal / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }

  // A panel whose outermost nodes would collapse onto its endpoints cannot be
  // refined further.
  const double scale = std::max({std::abs(a), std::abs(b), kMinNormal});
  const bool splittable = (b - a) > 4096.0 * kEps * scale && (b - a) > 1e-290;
  return {a, b, result, err, splittable};
}

bool worse(const Panel& lhs, const Panel& rhs) { return lhs.err < rhs.err; }

// Log of sum_i exp(terms[i]); -inf when every term is -inf.
double log_sum_exp(const std::vector<double>& terms) {
  double peak = kNegInf;
  for (double x : terms) peak = std::max(peak, x);
  if (peak == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : terms) sum += std::exp(x - peak);
  return peak + std::log(sum);
}

double checked_log(const Integrand& log_f, double t) {
  const double v = log_f(t);
  if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
    throw QuadratureError("integrand not finite at t = " + std::to_string(t));
  }
  return v;
}

// Integrates exp(log_f - scale).  The coarse scale can miss a narrow peak by
// hundreds of e-folds; a node that far above it restarts with the scale
// raised to that node's value.
LogQuadResult integrate_rescaled(const Integrand& log_f, double a, double b, double scale,
                                 const QuadConfig& cfg) {
  constexpr double kHeadroom = 600.0;
  for (int attempt = 0;; ++attempt) {
    double highest = kNegInf;
    auto normalized = [&log_f, &highest, scale](double t) {
      const double l = log_f(t);
      if (std::isnan(l)) return l;
      highest = std::max(highest, l);
      return l - scale > kHeadroom ? 0.0 : std::exp(l - scale);
    };
    LogQuadResult out;
    out.normalized = integrate_finite(normalized, a, b, cfg);
    out.log_scale = scale;
    if (highest - scale <= kHeadroom || attempt == 4) {
      if (highest - scale > kHeadroom) throw QuadratureError("integrand scale does not settle");
      return out;
    }
    scale = highest;
  }
}

// Coarse Riemann estimate of log of the integral of exp(log_f) over (a, b):
// uniform cells in the bulk and geometrically shrinking cells at both ends
// so that peaks squeezed against an endpoint are seen.
double coarse_log_integral(const Integrand& log_f, double a, double b) {
  const double len = b - a;
  std::vector<double> rel;
  rel.reserve(96);
  rel.push_back(0.0);
  for (int k = 50; k >= 6; k -= 2) rel.push_back(std::ldexp(1.0, -k));
  for (int j = 1; j < 32; ++j) rel.push_back(j / 32.0);
  for (int k = 6; k <= 50; k += 2) rel.push_back(1.0 - std::ldexp(1.0, -k));
  rel.push_back(1.0);
  std::sort(rel.begin(), rel.end());

  std::vector<double> terms;
  terms.reserve(rel.size());
  for (std::size_t i = 0; i + 1 < rel.size(); ++i) {
    const double lo = a + len * rel[i];
    const double hi = (i + 2 == rel.size()) ? b : a + len * rel[i + 1];
    const double mid = 0.5 * (lo + hi);
    if (!(mid > a && mid < b) || !(hi > lo)) continue;
    terms.push_back(checked_log(log_f, mid) + std::log(hi - lo));
  }
  return log_sum_exp(terms);
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw ParameterError("quadrature tolerances must be non-negative");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw ParameterError("abs_tol and rel_tol cannot both be zero");
  }
  if (max_subdivisions < 1) {
    throw ParameterError("max_subdivisions must be at least 1");
  }
  if (max_evals < kRulePoints) {
    throw ParameterError("max_evals must cover at least one base rule");
  }
}

QuadResult LogQuadResult::unscaled() const {
  QuadResult r = normalized;
  r.value = value();
  r.abs_err_estimate = abs_err_estimate();
  return r;
}

LogQuadResult add_log_results(const LogQuadResult& lhs, const LogQuadResult& rhs) {
  const double scale = std::max(lhs.log_scale, rhs.log_scale);
  const double wl = std::exp(lhs.log_scale - scale);
  const double wr = std::exp(rhs.log_scale - scale);
  LogQuadResult out;
  out.log_scale = scale;
  out.normalized.value = lhs.normalized.value * wl + rhs.normalized.value * wr;
  out.normalized.abs_err_estimate =
      lhs.normalized.abs_err_estimate * wl + rhs.normalized.abs_err_estimate * wr;
  out.normalized.evals = lhs.normalized.evals + rhs.normalized.evals;
  out.normalized.subdivisions = lhs.normalized.subdivisions + rhs.normalized.subdivisions;
  out.normalized.converged = lhs.normalized.converged && rhs.normalized.converged;
  return out;
}

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadConfig& cfg) {
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ParameterError("integrate_finite requires finite a < b");
  }

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  std::vector<Panel> frozen;
  heap.push_back(gauss_kronrod(f, a, b));
  long evals = kRulePoints;
  int subdivisions = 0;

  auto totals = [&]() {
    double value = 0.0;
    double err = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      err += p.err;
    }
    for (const auto& p : frozen) {
      value += p.value;
      err += p.err;
    }
    return std::pair{value, err};
  };

  auto [value, err] = totals();
  while (true) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    if (err <= tol) break;
    if (heap.empty() || subdivisions >= cfg.max_subdivisions ||
        evals + 2 * kRulePoints > cfg.max_evals) {
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    heap.pop_back();
    if (!worst.splittable) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    heap.push_back(gauss_kronrod(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(gauss_kronrod(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), worse);
    evals += 2 * kRulePoints;
    ++subdivisions;
    std::tie(value, err) = totals();
  }

  QuadResult out;
  out.value = value;
  out.abs_err_estimate = err;
  out.evals = evals;
  out.subdivisions = subdivisions;
  out.converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  return out;
}

QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadConfig& cfg) {
  cfg.validate();
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ParameterError("integrate_semi_infinite requires finite a >= 0");
  }

  // Contributions of [a + 2^k, a + 2^(k+1)] far out in the tail.
  double previous = 0.0;
  for (int k = 20; k <= 23; ++k) {
    const double lo = a + std::ldexp(1.0, k);
    const double hi = a + std::ldexp(1.0, k + 1);
    const double piece = std::abs(gauss_kronrod(f, lo, hi).value);
    if (k > 20 && piece > 1e-300 && piece > 0.99 * previous) {
      throw QuadratureError("tail does not converge");
    }
    previous = piece;
  }

  auto mapped = [&f, a](double u) {
    const double w = 1.0 - u;
    return f(a + u / w) / (w * w);
  };
  QuadResult r = integrate_finite(mapped, 0.0, 1.0, cfg);
  r.evals += 4 * kRulePoints;
  return r;
}

LogQuadResult integrate_log_finite(const Integrand& log_f, double a, double b,
                                   const QuadConfig& cfg) {
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ParameterError("integrate_finite requires finite a < b");
  }
  double scale = coarse_log_integral(log_f, a, b);
  if (!std::isfinite(scale)) scale = 0.0;
  return integrate_rescaled(log_f, a, b, scale, cfg);
}

LogQuadResult integrate_log_semi_infinite(const Integrand& log_f, double a,
                                          const QuadConfig& cfg) {
  cfg.validate();
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ParameterError("integrate_semi_infinite requires finite a >= 0");
  }
  auto mapped = [&log_f, a](double u) {
    const double w = 1.0 - u;
    return log_f(a + u / w) - 2.0 * std::log(w);
  };
  double scale = coarse_log_integral(mapped, 0.0, 1.0);
  if (!std::isfinite(scale)) scale = 0.0;

  // Tail pieces in log form, compared among themselves and against the
  // coarse estimate of the whole integral.
  double previous = kNegInf;
  for (int k = 20; k <= 23; ++k) {
    const double lo = a + std::ldexp(1.0, k);
    const double hi = a + std::ldexp(1.0, k + 1);
    auto shifted = [&log_f, scale](double t) {
      const double l = checked_log(log_f, t) - scale;
      if (l > 600.0) throw QuadratureError("tail does not converge");
      return std::exp(l);
    };
    const double piece = gauss_kronrod(shifted, lo, hi).value;
    const double log_piece = piece > 0.0 ? std::log(piece) : kNegInf;
    if (k > 20 && log_piece > -50.0 && log_piece > previous + std::log(0.99)) {
      throw QuadratureError("tail does not converge");
    }
    previous = log_piece;
  }

  LogQuadResult out = integrate_rescaled(mapped, 0.0, 1.0, scale, cfg);
  out.normalized.evals += 4 * kRulePoints;
  return out;
}

}  // namespace xsf

#include "xsf/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "xsf/bessel_kernel.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_beta.hpp"
#include "xsf/extended_gamma.hpp"

namespace xsf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEnvelopeInflation = 1.001;
constexpr double kMinAcceptance = 0.01;
constexpr int kUniformCells = 2048;
constexpr int kCellProbes = 17;
constexpr double kCellInflation = 1.1;

// num / den for two log-scaled integrals, formed from the normalized parts
// so that equal scales cancel exactly.
double ratio(const LogQuadResult& num, const LogQuadResult& den) {
  return num.normalized.value / den.normalized.value *
         std::exp(num.log_scale - den.log_scale);
}

// Sorted points of (0, 1): a uniform grid plus geometric refinement toward
// both ends, where the density can be sharply peaked when p is small.
std::vector<double> probe_grid() {
  std::vector<double> g;
  for (int i = 1; i < kUniformCells; ++i) g.push_back(static_cast<double>(i) / kUniformCells);
  for (int k = 12; k <= 60; ++k) {
    g.push_back(std::ldexp(1.0, -k));
    if (k <= 53) g.push_back(1.0 - std::ldexp(1.0, -k));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

// Maximum of a function on [lo, hi] assumed unimodal there.
template <class F>
double golden_max(F f, double lo, double hi, double best) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

struct Table {
  std::vector<double> edges;       // 0 = e_0 < ... < e_m = 1
  std::vector<double> cumulative;  // P(X <= e_{i+1})
  std::vector<double> cell_bound;  // density bound on each cell
};

}  // namespace

ExtBetaDistribution::ExtBetaDistribution(double a, double b, double p, double nu,
                                         const QuadConfig& cfg)
    : a_(a), b_(b), p_(p), nu_(nu), order_(0.0), cfg_(cfg) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(nu)) {
    throw ParameterError("a, b and nu must be finite");
  }
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be > 0");
  order_ = KernelOrder(nu).bessel_order();
  norm_ = beta_nu_quad(a, b, p, nu, cfg);
  converged_value(norm_, "normalizer");
  if (!(norm_.normalized.value > 0.0)) throw QuadratureError("normalizer is not positive");
}

double ExtBetaDistribution::normalizer() const { return norm_.value(); }

double ExtBetaDistribution::log_normalizer() const { return norm_.log_value(); }

double ExtBetaDistribution::log_pdf(double t) const {
  if (!(t > 0.0 && t < 1.0)) return kNegInf;
  const double log_t = std::log(t);
  const double log_omt = std::log1p(-t);
  const double log_w = std::log(p_) - log_t - log_omt;
  if (log_w > 700.0) return kNegInf;
  const double w = std::exp(log_w);
  return 0.5 * std::log(2.0 * p_ / std::numbers::pi) + (a_ - 1.5) * log_t +
         (b_ - 1.5) * log_omt - w + log_k_scaled(order_, w) - log_normalizer();
}

double ExtBetaDistribution::pdf(double t) const { return std::exp(log_pdf(t)); }

double ExtBetaDistribution::moment(double r) const {
  if (!std::isfinite(r)) throw ParameterError("r must be finite");
  if (r == 0.0) return 1.0;
  const LogQuadResult num = beta_nu_quad(a_ + r, b_, p_, nu_, cfg_);
  converged_value(num, "moment");
  return ratio(num, norm_);
}

double ExtBetaDistribution::mean() const { return moment(1.0); }

double ExtBetaDistribution::variance() const {
  const double m1 = moment(1.0);
  const double m2 = moment(2.0);
  return m2 - m1 * m1;
}

SeriesResult ExtBetaDistribution::mgf(double t, int n_terms) const {
  if (!std::isfinite(t)) throw ParameterError("t must be finite");
  if (n_terms < 1) throw ParameterError("n_terms must be at least 1");
  SeriesResult out;
  double coeff = 1.0;  // t^n / n!
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) coeff *= t / n;
    const double term = coeff == 0.0 ? 0.0 : coeff * moment(n);
    out.value += term;
    out.last_term_abs = std::abs(term);
    out.terms_used = n + 1;
  }
  out.converged = out.last_term_abs <= cfg_.rel_tol * std::abs(out.value);
  return out;
}

double ExtBetaDistribution::cdf(double x) const {
  if (std::isnan(x)) throw ParameterError("x must not be NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const LogQuadResult num = beta_incomplete_nu_quad(x, a_, b_, p_, nu_, cfg_);
  converged_value(num, "cdf");
  return std::clamp(ratio(num, norm_), 0.0, 1.0);
}

SampleResult ExtBetaDistribution::sample(std::uint64_t seed, long n, Execution exec) const {
  if (n < 1) throw ParameterError("n must be at least 1");

  const std::vector<double> grid = probe_grid();
  auto lpdf = [this](double t) {
    const double v = log_pdf(t);
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw QuadratureError("density is not finite at t = " + std::to_string(t));
    }
    return v;
  };

  std::size_t best_i = 0;
  double best = kNegInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = lpdf(grid[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = best_i == 0 ? 0.5 * grid[0] : grid[best_i - 1];
  const double hi = best_i + 1 == grid.size() ? 0.5 * (1.0 + grid.back()) : grid[best_i + 1];
  best = golden_max(lpdf, lo, hi, best);

  SampleResult out;
  out.envelope = std::exp(best) * kEnvelopeInflation;
  const bool use_table = 1.0 / out.envelope < kMinAcceptance;
  out.method = use_table ? "table" : "rejection";

  Table table;
  if (use_table) {
    table.edges.push_back(0.0);
    table.edges.insert(table.edges.end(), grid.begin(), grid.end());
    table.edges.push_back(1.0);
    const std::size_t cells = table.edges.size() - 1;
    std::vector<LogQuadResult> mass(cells);
    table.cell_bound.resize(cells);
    for_each_index(cells, exec, [&](std::size_t i) {
      const double e0 = table.edges[i];
      const double e1 = table.edges[i + 1];
      mass[i] = integrate_log_finite([&](double t) { return log_pdf(t); }, e0, e1, cfg_);
      double m = kNegInf;
      for (int k = 0; k < kCellProbes; ++k) {
        m = std::max(m, log_pdf(e0 + (e1 - e0) * k / (kCellProbes - 1)));
      }
      table.cell_bound[i] = std::exp(m) * kCellInflation;
    });
    double run = 0.0;
    for (const auto& c : mass) {
      run += c.value();
      table.cumulative.push_back(run);
    }
  }

  const long blocks = (n + kBlockSize - 1) / kBlockSize;
  out.values.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<long> proposals(static_cast<std::size_t>(blocks), 0);
  std::vector<long> exceeded(static_cast<std::size_t>(blocks), 0);
  const auto seed_lo = static_cast<std::uint32_t>(seed);
  const auto seed_hi = static_cast<std::uint32_t>(seed >> 32);

  for_each_index(static_cast<std::size_t>(blocks), exec, [&](std::size_t blk) {
    std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(blk)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long begin = static_cast<long>(blk) * kBlockSize;
    const long end = std::min(n, begin + kBlockSize);
    long tried = 0;
    long over = 0;
    for (long k = begin; k < end; ++k) {
      double lo_t = 0.0;
      double hi_t = 1.0;
      double bound = out.envelope;
      if (use_table) {
        const double total = table.cumulative.back();
        const double target = unif(gen) * total;
        const auto it =
            std::upper_bound(table.cumulative.begin(), table.cumulative.end(), target);
        const auto cell = std::min<std::size_t>(it - table.cumulative.begin(),
                                                table.cumulative.size() - 1);
        lo_t = table.edges[cell];
        hi_t = table.edges[cell + 1];
        bound = table.cell_bound[cell];
      }
      while (true) {
        const double t = lo_t + (hi_t - lo_t) * unif(gen);
        const double accept = unif(gen) * bound;
        ++tried;
        if (!(t > 0.0 && t < 1.0)) continue;
        const double f = pdf(t);
        if (f > bound) ++over;
        if (accept < f) {
          out.values[static_cast<std::size_t>(k)] = t;
          break;
        }
      }
    }
    proposals[blk] = tried;
    exceeded[blk] = over;
  });

  for (std::size_t i = 0; i < proposals.size(); ++i) {
    out.proposals += proposals[i];
    out.envelope_exceeded += exceeded[i];
  }
  out.acceptance_ratio = static_cast<double>(n) / static_cast<double>(out.proposals);
  return out;
}

}  // namespace xsf

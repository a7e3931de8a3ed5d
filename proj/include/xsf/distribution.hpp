#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xsf/grid.hpp"
#include "xsf/quadrature.hpp"
#include "xsf/special.hpp"

namespace xsf {

struct SampleResult {
  std::vector<double> values;
  std::string method;            // "rejection" or "table"
  double envelope = 0.0;         // bound on the density used for acceptance
  long proposals = 0;
  double acceptance_ratio = 0.0;  // accepted / proposals
  long envelope_exceeded = 0;    // proposals whose density was above the bound
};

// Density on (0, 1) proportional to the B_nu integrand:
//   f(t) = sqrt(2p/pi) t^(a-3/2) (1-t)^(b-3/2) K_{nu+1/2}(p/(t(1-t))) / B_nu(a, b; p)
// for any real a, b and p > 0.  Immutable after construction.
class ExtBetaDistribution {
 public:
  ExtBetaDistribution(double a, double b, double p, double nu, const QuadConfig& cfg = {});

  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }
  double nu() const { return nu_; }
  double normalizer() const;
  double log_normalizer() const;

  // 0 outside (0, 1).
  double pdf(double t) const;
  double log_pdf(double t) const;

  // E[X^r] = B_nu(a+r, b; p)/B_nu(a, b; p); r = 0 gives exactly 1.
  double moment(double r) const;
  double mean() const;
  // (B_nu(a,b) B_nu(a+2,b) - B_nu(a+1,b)^2)/B_nu(a,b)^2.
  double variance() const;

  // sum_{n < n_terms} t^n/n! E[X^n]; converged when the last term is below
  // cfg.rel_tol times the sum.
  SeriesResult mgf(double t, int n_terms) const;

  // P(X <= x), clamped to [0, 1]; x <= 0 gives 0, x >= 1 gives 1.
  double cdf(double x) const;

  // n draws from the seeded generator.  Draws are produced in fixed blocks,
  // each with its own generator derived from (seed, block index), so serial
  // and parallel execution return the same sequence.  Uniform-proposal
  // rejection is used unless its acceptance would fall below 1%; then the
  // draws come from a tabulated CDF (cell chosen by bisection, position
  // within the cell by rejection).
  SampleResult sample(std::uint64_t seed, long n, Execution exec = Execution::parallel) const;

  static constexpr long kBlockSize = 4096;

 private:
  double a_;
  double b_;
  double p_;
  double nu_;
  double order_;
  QuadConfig cfg_;
  LogQuadResult norm_;
};

}  // namespace xsf

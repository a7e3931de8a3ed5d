#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xsf/grid.hpp"
#include "xsf/quadrature.hpp"

namespace xsf {

// One line of the verification manifest:
//   suite case-id kind key=value ... tol=value [floor=value]
// floor is the accuracy of the case's own oracle (finite differences, a
// leading-order limit); no tolerance override may go below it.
struct CaseSpec {
  std::string suite;
  std::string id;
  std::string kind;
  std::map<std::string, std::string> params;
  double tol = 0.0;
  double floor = 0.0;

  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  std::string str(const std::string& key, const std::string& fallback = "") const;
};

// How CaseOutcome::metric is to be read.
enum class MetricKind {
  rel_err,      // relative discrepancy, passes when <= threshold
  decay_ratio,  // largest ratio of consecutive errors, passes when < 1
  z_score,      // largest |z| of Monte-Carlo estimates, passes when <= 3
  ks_ratio      // KS statistic over its 1% critical value, passes when <= 1
};

const char* to_string(MetricKind k);

struct CaseOutcome {
  std::string suite;
  std::string id;
  std::string kind;
  bool passed = false;
  double expected = 0.0;
  double got = 0.0;
  MetricKind metric_kind = MetricKind::rel_err;
  double metric = 0.0;
  double threshold = 0.0;
  std::string detail;  // error message when the evaluation threw
};

struct VerifyReport {
  std::string suite;
  int cases_run = 0;
  int cases_passed = 0;
  double worst_rel_err = 0.0;  // over the rel_err-type cases
  std::vector<CaseOutcome> cases;  // sorted by id
};

// Parse errors throw ParameterError naming the line.
std::vector<CaseSpec> parse_manifest(std::istream& in);
std::vector<CaseSpec> load_manifest(const std::string& path);

const std::vector<std::string>& suite_names();

// Evaluates one case.  tol_override replaces the manifest tolerance of the
// rel_err-type cases, but never drops below the case floor.  Evaluator exceptions become a
// failed outcome.
CaseOutcome run_case(const CaseSpec& spec, std::optional<double> tol_override = {},
                     const QuadConfig& cfg = {});

// Runs every case of `suite` ("all" selects everything).
VerifyReport run_suite(const std::vector<CaseSpec>& manifest, const std::string& suite,
                       std::optional<double> tol_override = {},
                       Execution exec = Execution::parallel, const QuadConfig& cfg = {});

// JSON text of the report with 17 significant digits; deterministic.
std::string report_json(const VerifyReport& report);

}  // namespace xsf

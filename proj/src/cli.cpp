#include "xsf/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json_out.hpp"
#include "xsf/bessel_kernel.hpp"
#include "xsf/distribution.hpp"
#include "xsf/errors.hpp"
#include "xsf/extended_beta.hpp"
#include "xsf/extended_gamma.hpp"
#include "xsf/hypergeometric.hpp"
#include "xsf/verify.hpp"

namespace xsf {

namespace {

using Field = std::variant<double, long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Field>>;

std::string csv_cell(const Field& f) {
  if (const auto* d = std::get_if<double>(&f)) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.17g", *d);
    return tmp;
  }
  if (const auto* l = std::get_if<long>(&f)) return std::to_string(*l);
  if (const auto* b = std::get_if<bool>(&f)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(f);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void json_value(detail::JsonOut& j, const Field& f) {
  std::visit([&j](const auto& v) { j.value(v); }, f);
}

void json_field(detail::JsonOut& j, const std::string& key, const Field& f) {
  j.key(key);
  json_value(j, f);
}

struct Output {
  std::ostream& out;
  bool csv = false;

  void record(const Record& r) const {
    if (csv) {
      std::string head, row;
      for (std::size_t i = 0; i < r.size(); ++i) {
        head += (i ? "," : "") + r[i].first;
        row += (i ? "," : "") + csv_cell(r[i].second);
      }
      out << head << "\n" << row << "\n";
      return;
    }
    detail::JsonOut j;
    j.begin_object();
    for (const auto& [k, v] : r) json_field(j, k, v);
    j.end_object();
    out << j.str() << "\n";
  }

  // A header record plus rows sharing the columns of `rows`.
  void table(const Record& header, const std::string& rows_key,
             const std::vector<Record>& rows) const {
    if (csv) {
      if (rows.empty()) return;
      std::string head;
      for (std::size_t i = 0; i < rows[0].size(); ++i) head += (i ? "," : "") + rows[0][i].first;
      out << head << "\n";
      for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "," : "") + csv_cell(r[i].second);
        out << line << "\n";
      }
      return;
    }
    detail::JsonOut j;
    j.begin_object();
    for (const auto& [k, v] : header) json_field(j, k, v);
    j.key(rows_key).begin_array();
    for (const auto& r : rows) {
      // Single-column rows are emitted as bare values.
      if (r.size() == 1) {
        json_value(j, r[0].second);
        continue;
      }
      j.begin_object();
      for (const auto& [k, v] : r) json_field(j, k, v);
      j.end_object();
    }
    j.end_array();
    j.end_object();
    out << j.str() << "\n";
  }
};

// Options shared by the evaluation subcommands.  Unset values are checked
// per function so that the message names the missing flag.
struct Params {
  std::optional<double> x, y, p, nu, a, b, c, z, s, alpha, order, t, r_single;
  std::vector<double> r;
  std::optional<long> n;
  std::optional<int> terms;
  std::uint64_t seed = 0;
  std::string repr = "defining";
  std::string method = "integral";
  std::string format = "json";
  std::optional<double> tol;
  bool serial = false;

  static double need(const std::optional<double>& v, const char* flag) {
    if (!v) throw ParameterError(std::string("missing required option --") + flag);
    return *v;
  }
};

void add_format(CLI::App* sub, Params& prm) {
  sub->add_option("--format", prm.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

QuadConfig make_config(const Params& prm) {
  QuadConfig cfg;
  if (const char* env = std::getenv("XSF_MAX_EVALS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) {
      throw ParameterError(std::string("XSF_MAX_EVALS must be a positive integer, got ") + env);
    }
    cfg.max_evals = v;
  }
  if (prm.tol) cfg.rel_tol = *prm.tol;
  cfg.validate();
  return cfg;
}

BetaRepr parse_repr(const std::string& s) {
  if (s == "trig") return BetaRepr::trig;
  if (s == "rational") return BetaRepr::rational;
  if (s == "symmetric") return BetaRepr::symmetric;
  return BetaRepr::defining;
}

HypMethod parse_method(const std::string& s) {
  return s == "series" ? HypMethod::series : HypMethod::integral;
}

int quad_record(const Output& o, const std::string& fn, const LogQuadResult& r,
                const std::string& method) {
  o.record({{"function", fn},
            {"value", r.value()},
            {"err_estimate", r.abs_err_estimate()},
            {"method", method},
            {"converged", r.converged()},
            {"evals", r.normalized.evals}});
  return r.converged() ? 0 : 1;
}

int run_eval(const std::string& fn, const Params& prm, const Output& o) {
  const QuadConfig cfg = make_config(prm);
  const double nu = prm.nu.value_or(0.0);
  if (fn == "beta") {
    const double x = Params::need(prm.x, "x"), y = Params::need(prm.y, "y");
    const double p = Params::need(prm.p, "p");
    const BetaRepr repr = parse_repr(prm.repr);
    return quad_record(o, fn, beta_nu_repr_quad(x, y, p, nu, repr, cfg), prm.repr);
  }
  if (fn == "kernel") {
    const double z = Params::need(prm.z, "z");
    const double order = prm.order ? *prm.order : KernelOrder(nu).bessel_order();
    if (!(z > 0.0)) throw DomainError("K requires z > 0");
    const double log_scaled = log_k_scaled(order, z);
    o.record({{"function", fn},
              {"order", order},
              {"z", z},
              {"value", std::exp(log_scaled - z)},
              {"scaled", std::exp(log_scaled)},
              {"log_scaled", log_scaled}});
    return 0;
  }
  if (fn == "gamma-lower" || fn == "gamma-upper") {
    const double al = Params::need(prm.alpha, "alpha"), x = Params::need(prm.x, "x");
    const double p = Params::need(prm.p, "p");
    const bool lower = fn == "gamma-lower";
    if (prm.nu) {
      return quad_record(o, fn,
                         lower ? gamma_lower_nu_quad(al, x, p, nu, cfg)
                               : gamma_upper_nu_quad(al, x, p, nu, cfg),
                         "bessel-kernel integral");
    }
    return quad_record(o, fn,
                       lower ? gamma_lower_p_quad(al, x, p, cfg) : gamma_upper_p_quad(al, x, p, cfg),
                       "integral");
  }
  if (fn == "gamma-total") {
    const double al = Params::need(prm.alpha, "alpha"), p = Params::need(prm.p, "p");
    o.record({{"function", fn}, {"value", gamma_total_p(al, p)}, {"method", "bessel"}});
    return 0;
  }
  if (fn == "hyp" || fn == "chyp") {
    const double b = Params::need(prm.b, "b"), c = Params::need(prm.c, "c");
    const double z = Params::need(prm.z, "z"), p = Params::need(prm.p, "p");
    const HypMethod m = parse_method(prm.method);
    const HypValue v = fn == "hyp" ? f_pnu_eval(Params::need(prm.a, "a"), b, c, z, p, nu, m, cfg)
                                   : phi_pnu_eval(b, c, z, p, nu, m, cfg);
    o.record({{"function", fn},
              {"value", v.value},
              {"err_estimate", v.err_estimate},
              {"method", to_string(v.method)},
              {"converged", v.converged},
              {"terms_used", static_cast<long>(v.terms_used)}});
    return v.converged ? 0 : 1;
  }
  throw ParameterError("unknown function " + fn);
}

int run_mellin(const std::string& fn, const Params& prm, const Output& o) {
  const QuadConfig cfg = make_config(prm);
  const double s = Params::need(prm.s, "s");
  const double nu = prm.nu.value_or(0.0);
  MellinCheckReport r;
  if (fn == "beta") {
    r = beta_nu_mellin_check(Params::need(prm.x, "x"), Params::need(prm.y, "y"), s, nu, cfg);
  } else if (fn == "hyp") {
    r = f_pnu_mellin_check(Params::need(prm.a, "a"), Params::need(prm.b, "b"),
                           Params::need(prm.c, "c"), Params::need(prm.z, "z"), s, nu, cfg);
  } else {
    r = phi_pnu_mellin_check(Params::need(prm.b, "b"), Params::need(prm.c, "c"),
                             Params::need(prm.z, "z"), s, nu, cfg);
  }
  o.record({{"s", r.s},
            {"nu", r.nu},
            {"x", r.x},
            {"y", r.y},
            {"lhs", r.lhs_numeric},
            {"rhs", r.rhs_closed},
            {"abs_diff", r.abs_diff},
            {"rel_diff", r.rel_diff}});
  return 0;
}

int run_asympt(const std::string& fn, const Params& prm, const Output& o) {
  const QuadConfig cfg = make_config(prm);
  const double b = Params::need(prm.b, "b"), c = Params::need(prm.c, "c");
  const double z = Params::need(prm.z, "z"), p = Params::need(prm.p, "p");
  const double nu = prm.nu.value_or(0.0);
  double approx = 0.0, exact = 0.0;
  long n = 1;
  if (fn == "hyp") {
    const double a = Params::need(prm.a, "a");
    n = prm.n.value_or(1);
    approx = f_pnu_asymptotic(a, b, c, z, p, nu, static_cast<int>(n), cfg);
    exact = f_pnu(a, b, c, z, p, nu, HypMethod::integral, cfg);
  } else {
    approx = phi_pnu_asymptotic(b, c, z, p, nu, cfg);
    exact = phi_pnu(b, c, z, p, nu, HypMethod::integral, cfg);
  }
  o.record({{"function", fn},
            {"z", z},
            {"n", n},
            {"approx", approx},
            {"exact", exact},
            {"rel_err", std::abs(approx / exact - 1.0)}});
  return 0;
}

int run_dist(const std::string& what, const Params& prm, const Output& o) {
  const QuadConfig cfg = make_config(prm);
  const ExtBetaDistribution d(Params::need(prm.a, "a"), Params::need(prm.b, "b"),
                              Params::need(prm.p, "p"), prm.nu.value_or(0.0), cfg);
  if (what == "pdf") {
    const double t = Params::need(prm.t, "t");
    o.record({{"t", t}, {"value", d.pdf(t)}});
  } else if (what == "cdf") {
    const double x = Params::need(prm.x, "x");
    o.record({{"x", x}, {"value", d.cdf(x)}});
  } else if (what == "mean") {
    o.record({{"value", d.mean()}});
  } else if (what == "variance") {
    o.record({{"value", d.variance()}});
  } else if (what == "moment") {
    if (prm.r.empty()) throw ParameterError("missing required option --r");
    std::vector<Record> rows;
    for (double r : prm.r) rows.push_back({{"r", r}, {"value", d.moment(r)}});
    o.table({}, "moments", rows);
  } else if (what == "mgf") {
    const double t = Params::need(prm.t, "t");
    const SeriesResult s = d.mgf(t, prm.terms.value_or(30));
    o.record({{"t", t},
              {"value", s.value},
              {"terms_used", static_cast<long>(s.terms_used)},
              {"last_term_abs", s.last_term_abs},
              {"converged", s.converged}});
  } else if (what == "sample") {
    const long n = prm.n.value_or(1);
    const SampleResult s =
        d.sample(prm.seed, n, prm.serial ? Execution::serial : Execution::parallel);
    std::vector<Record> rows;
    rows.reserve(s.values.size());
    for (double v : s.values) rows.push_back({{"value", v}});
    o.table({{"n", n},
             {"seed", static_cast<long>(prm.seed)},
             {"method", s.method},
             {"acceptance_ratio", s.acceptance_ratio}},
            "values", rows);
  } else {
    throw ParameterError("unknown dist query " + what);
  }
  return 0;
}

int run_verify(const std::string& suite, const std::string& manifest, const Params& prm,
               const Output& o) {
  Params base = prm;
  base.tol.reset();  // --tol here overrides case tolerances, not quadrature
  const QuadConfig cfg = make_config(base);
  const VerifyReport report = run_suite(load_manifest(manifest), suite, prm.tol,
                                        prm.serial ? Execution::serial : Execution::parallel, cfg);
  if (o.csv) {
    std::vector<Record> rows;
    for (const auto& c : report.cases) {
      rows.push_back({{"id", c.id},
                      {"suite", c.suite},
                      {"kind", c.kind},
                      {"passed", c.passed},
                      {"metric_kind", std::string(to_string(c.metric_kind))},
                      {"metric", c.metric},
                      {"threshold", c.threshold},
                      {"expected", c.expected},
                      {"got", c.got}});
    }
    o.table({}, "cases", rows);
  } else {
    o.out << report_json(report);
  }
  return report.cases_passed == report.cases_run ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bessel-kernel extended Beta, gamma and hypergeometric functions", "xsf"};
  app.require_subcommand(1, 1);

  Params prm;
  std::string function;
  std::string manifest = XSF_DEFAULT_MANIFEST;
  std::string suite = "all";

  auto num = [&](CLI::App* sub, const char* name, std::optional<double>& slot,
                 const char* help) { sub->add_option(name, slot, help); };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate one function");
  eval->add_option("function", function, "Function to evaluate")
      ->required()
      ->check(CLI::IsMember(
          {"beta", "kernel", "gamma-lower", "gamma-upper", "gamma-total", "hyp", "chyp"}));
  num(eval, "--x", prm.x, "x (Beta first argument, gamma split point)");
  num(eval, "--y", prm.y, "y");
  num(eval, "--p", prm.p, "p >= 0");
  num(eval, "--nu", prm.nu, "kernel index nu (order nu+1/2)");
  num(eval, "--a", prm.a, "a");
  num(eval, "--b", prm.b, "b");
  num(eval, "--c", prm.c, "c");
  num(eval, "--z", prm.z, "z");
  num(eval, "--alpha", prm.alpha, "alpha");
  num(eval, "--order", prm.order, "Bessel order (kernel)");
  eval->add_option("--repr", prm.repr, "Integral representation for beta")
      ->check(CLI::IsMember({"defining", "trig", "rational", "symmetric"}))
      ->capture_default_str();
  eval->add_option("--method", prm.method, "hyp/chyp evaluation method")
      ->check(CLI::IsMember({"integral", "series"}))
      ->capture_default_str();
  eval->add_option("--tol", prm.tol, "Relative quadrature tolerance");
  add_format(eval, prm);

  CLI::App* mellin = app.add_subcommand("mellin", "Compare a Mellin transform in p with its closed form");
  mellin->add_option("function", function, "beta, hyp or chyp")
      ->required()
      ->check(CLI::IsMember({"beta", "hyp", "chyp"}));
  for (auto [name, slot] : {std::pair{"--x", &prm.x}, {"--y", &prm.y}, {"--s", &prm.s},
                            {"--nu", &prm.nu}, {"--a", &prm.a}, {"--b", &prm.b},
                            {"--c", &prm.c}, {"--z", &prm.z}}) {
    num(mellin, name, *slot, "");
  }
  mellin->add_option("--tol", prm.tol, "Relative quadrature tolerance");
  add_format(mellin, prm);

  CLI::App* asympt = app.add_subcommand("asympt", "Large-|z| forms against the exact value");
  asympt->add_option("function", function, "hyp or chyp")
      ->required()
      ->check(CLI::IsMember({"hyp", "chyp"}));
  for (auto [name, slot] : {std::pair{"--a", &prm.a}, {"--b", &prm.b}, {"--c", &prm.c},
                            {"--z", &prm.z}, {"--p", &prm.p}, {"--nu", &prm.nu}}) {
    num(asympt, name, *slot, "");
  }
  asympt->add_option("--n", prm.n, "Number of expansion terms (hyp)");
  asympt->add_option("--tol", prm.tol, "Relative quadrature tolerance");
  add_format(asympt, prm);

  CLI::App* dist = app.add_subcommand("dist", "Extended Beta distribution");
  dist->add_option("query", function, "pdf, cdf, mean, variance, moment, mgf or sample")
      ->required()
      ->check(CLI::IsMember({"pdf", "cdf", "mean", "variance", "moment", "mgf", "sample"}));
  for (auto [name, slot] : {std::pair{"--a", &prm.a}, {"--b", &prm.b}, {"--p", &prm.p},
                            {"--nu", &prm.nu}, {"--t", &prm.t}, {"--x", &prm.x}}) {
    num(dist, name, *slot, "");
  }
  dist->add_option("--r", prm.r, "Moment orders")->delimiter(',');
  dist->add_option("--n", prm.n, "Number of draws")->check(CLI::PositiveNumber);
  dist->add_option("--terms", prm.terms, "MGF series terms")->check(CLI::PositiveNumber);
  dist->add_option("--seed", prm.seed, "Generator seed")->capture_default_str();
  dist->add_flag("--serial", prm.serial, "Sample on one thread");
  dist->add_option("--tol", prm.tol, "Relative quadrature tolerance");
  add_format(dist, prm);

  CLI::App* verify = app.add_subcommand("verify", "Run identity-verification suites");
  verify->add_option("--suite", suite, "Suite name")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--tol", prm.tol, "Override the manifest tolerances");
  verify->add_option("--manifest", manifest, "Case manifest")->capture_default_str();
  verify->add_flag("--serial", prm.serial, "Run cases on one thread");
  add_format(verify, prm);

  try {
    std::vector<std::string> storage{"xsf"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << active->help();
    return 2;
  }

  const Output o{out, prm.format == "csv"};
  try {
    if (eval->parsed()) return run_eval(function, prm, o);
    if (mellin->parsed()) return run_mellin(function, prm, o);
    if (asympt->parsed()) return run_asympt(function, prm, o);
    if (dist->parsed()) return run_dist(function, prm, o);
    if (verify->parsed()) return run_verify(suite, manifest, prm, o);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace xsf

#include "pedops/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pedops/analysis.hpp"
#include "pedops/function_spec.hpp"
#include "pedops/moments.hpp"
#include "pedops/operator_core.hpp"
#include "pedops/verify.hpp"

namespace pedops {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jesc(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    switch (c) {
      case '"': r += "\\\""; break;
      case '\\': r += "\\\\"; break;
      case '\n': r += "\\n"; break;
      case '\t': r += "\\t"; break;
      default: r += c;
    }
  }
  r += '"';
  return r;
}

AlphaSpec parse_alpha(const std::string& s) {
  if (s == "1/n") return AlphaSpec::rule_over_n();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) {
    throw std::invalid_argument("--alpha expects a decimal literal or 1/n");
  }
  return AlphaSpec::literal(v);
}

std::vector<double> parse_x_grid(const std::string& s) {
  double a = 0.0, b = 0.0;
  long m = 0;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &a, &b, &m, &extra) != 3 ||
      m < 1) {
    throw std::invalid_argument("--x-grid expects a:b:m with m >= 1");
  }
  std::vector<double> xs;
  for (long i = 0; i < m; ++i) {
    xs.push_back(m == 1 ? a
                        : a + (b - a) * static_cast<double>(i) /
                                  static_cast<double>(m - 1));
  }
  return xs;
}

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> ns;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int n = std::stoi(item, &used);
    if (used != item.size() || n < 1) {
      throw std::invalid_argument("--n-list expects comma-separated n >= 1");
    }
    ns.push_back(n);
  }
  if (ns.empty()) throw std::invalid_argument("--n-list is empty");
  return ns;
}

// Shared operator-parameter flags; --case resolves the named special
// case, otherwise the explicit n/p/alpha/lambda combination is used.
struct ParamCli {
  std::string case_name;
  int n = 0;
  int p = -1;                // -1 = not given
  std::string alpha;         // empty = not given
  int lambda = -2;           // -2 = not given

  void attach(CLI::App* cmd, bool with_case) {
    if (with_case) {
      cmd->add_option("--case", case_name, "special case name");
    }
    cmd->add_option("--n", n, "operator index n (>= 1)");
    cmd->add_option("--p", p, "index shift p (>= 0)");
    cmd->add_option("--alpha", alpha, "alpha: decimal literal or 1/n");
    cmd->add_option("--lambda", lambda, "-1 (finite, [0,1]) or 0 ([0,inf))");
  }

  std::optional<AlphaSpec> alpha_opt() const {
    if (alpha.empty()) return std::nullopt;
    return parse_alpha(alpha);
  }

  OperatorParams build() const {
    if (!case_name.empty()) {
      const auto kind = special_case_from_name(case_name);
      if (!kind) {
        throw std::invalid_argument("unknown --case: " + case_name);
      }
      if (lambda != -2) {
        throw std::invalid_argument("--lambda conflicts with --case");
      }
      if (n < 1) throw std::invalid_argument("--n is required (n >= 1)");
      std::optional<int> p_opt;
      if (p >= 0) p_opt = p;
      return special_case(*kind, n, p_opt, alpha_opt());
    }
    if (n < 1) throw std::invalid_argument("--n is required (n >= 1)");
    if (lambda != -1 && lambda != 0) {
      throw std::invalid_argument("--lambda must be -1 or 0");
    }
    OperatorParams params{n, p < 0 ? 0 : p,
                          alpha.empty() ? AlphaSpec::literal(0.0)
                                        : parse_alpha(alpha),
                          lambda == -1 ? Lambda::minus_one : Lambda::zero};
    params.validate();
    return params;
  }
};

void emit_params(std::ostream& os, const OperatorParams& p) {
  os << "\"params\":{\"n\":" << p.n << ",\"p\":" << p.p
     << ",\"alpha\":" << fmt17(p.alpha_value())
     << ",\"alpha_rule\":" << (p.alpha.over_n ? "true" : "false")
     << ",\"lambda\":" << p.lam() << "}";
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = nullptr;

  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os = &fallback;
    } else {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open output: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

void require_tail(bool captured) {
  if (!captured) {
    throw std::runtime_error(
        "series tail not captured within k_max; raise --k-max");
  }
}

// ---- weights ----

struct WeightsOpt {
  ParamCli params;
  double x = 0.0;
  std::int64_t k_max = 1'000'000;
  double tail_eps = 1e-12;
  std::string format = "csv";
  std::string output;
};

int cmd_weights(const WeightsOpt& o, std::ostream& fallback) {
  const OperatorParams params = o.params.build();
  if (!params.in_domain(o.x)) {
    throw std::invalid_argument("--x outside the operator domain");
  }
  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();

  struct Row {
    std::int64_t k;
    double w, cum;
  };
  std::vector<Row> rows;
  detail::WeightSeries series(params, o.x);
  detail::KahanSum cum;
  while (true) {
    cum.add(series.weight());
    rows.push_back({series.k(), series.weight(), cum.value()});
    if (series.done()) break;
    if (!params.finite_support() &&
        (1.0 - cum.value() <= o.tail_eps || series.k() >= o.k_max)) {
      break;
    }
    series.advance();
  }

  if (o.format == "csv") {
    os << "k,weight,cumulative\n";
    for (const Row& r : rows) {
      os << r.k << ',' << fmt17(r.w) << ',' << fmt17(r.cum) << '\n';
    }
  } else {
    os << '{';
    emit_params(os, params);
    os << ",\"x\":" << fmt17(o.x) << ",\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) os << ',';
      os << "{\"k\":" << rows[i].k << ",\"weight\":" << fmt17(rows[i].w)
         << ",\"cumulative\":" << fmt17(rows[i].cum) << '}';
    }
    os << "]}\n";
  }
  return 0;
}

// ---- apply ----

struct ApplyOpt {
  ParamCli params;
  std::string f;
  std::string x_grid;
  std::int64_t k_max = 1'000'000;
  double tail_eps = 1e-12;
  std::string format = "csv";
  std::string output;
};

int cmd_apply(const ApplyOpt& o, std::ostream& fallback) {
  const OperatorParams params = o.params.build();
  const FunctionSpec spec = FunctionSpec::parse(o.f);
  const RealFunction fn = spec.as_function();
  const std::vector<double> xs = parse_x_grid(o.x_grid);
  TruncationPolicy policy;
  policy.k_max = o.k_max;
  policy.tail_mass_epsilon = o.tail_eps;

  struct Row {
    double x, lf, fx, err, tail;
  };
  std::vector<Row> rows;
  for (double x : xs) {
    if (!params.in_domain(x)) {
      throw std::invalid_argument("x-grid point outside the operator domain");
    }
    const ApplyResult ar = apply(params, fn, x, policy);
    require_tail(ar.tail_captured);
    const double fx = fn(x);
    rows.push_back({x, ar.value, fx, std::fabs(ar.value - fx),
                    ar.tail_mass_deficit});
  }

  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();
  if (o.format == "csv") {
    os << "x,Lf,f,abs_error,tail_deficit\n";
    for (const Row& r : rows) {
      os << fmt17(r.x) << ',' << fmt17(r.lf) << ',' << fmt17(r.fx) << ','
         << fmt17(r.err) << ',' << fmt17(r.tail) << '\n';
    }
  } else {
    os << '{';
    emit_params(os, params);
    os << ",\"f\":" << jesc(spec.description()) << ",\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) os << ',';
      const Row& r = rows[i];
      os << "{\"x\":" << fmt17(r.x) << ",\"Lf\":" << fmt17(r.lf)
         << ",\"f\":" << fmt17(r.fx) << ",\"abs_error\":" << fmt17(r.err)
         << ",\"tail_deficit\":" << fmt17(r.tail) << '}';
    }
    os << "]}\n";
  }
  return 0;
}

// ---- moments ----

struct MomentsOpt {
  ParamCli params;
  double x = 0.0;
  int order = 4;
  std::int64_t k_max = 1'000'000;
  std::string output;
};

void emit_array(std::ostream& os, const char* key,
                const std::vector<double>& v) {
  os << '"' << key << "\":[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << fmt17(v[i]);
  }
  os << ']';
}

void emit_flags(std::ostream& os, const char* key,
                const std::vector<bool>& v) {
  os << '"' << key << "\":[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << (v[i] ? "true" : "false");
  }
  os << ']';
}

int cmd_moments(const MomentsOpt& o, std::ostream& fallback) {
  if (o.order < 1 || o.order > 4) {
    throw std::invalid_argument("--order must be in 1..4");
  }
  const OperatorParams params = o.params.build();
  params.validate_order(o.order);
  if (!params.in_domain(o.x)) {
    throw std::invalid_argument("--x outside the operator domain");
  }
  TruncationPolicy policy;
  policy.k_max = o.k_max;
  const OracleMoments om = moment_oracle(params, o.x, policy);
  require_tail(om.tail_captured);

  const auto n_vals = static_cast<std::size_t>(o.order) + 1;
  std::array<double, 5> raw_full{1.0, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> raw(n_vals), raw_oracle(n_vals), central(n_vals),
      central_oracle(n_vals);
  std::vector<bool> raw_ok(n_vals), central_ok(n_vals);
  for (int j = 0; j <= o.order; ++j) {
    raw_full[static_cast<std::size_t>(j)] =
        raw_moment_closed(params, j, o.x);
  }
  const auto central_full = central_from_raw(raw_full, o.x);
  for (int j = 0; j <= o.order; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    raw[ju] = raw_full[ju];
    raw_oracle[ju] = om.raw[ju];
    central[ju] = (j == 1) ? first_central_closed(params, o.x)
                           : central_full[ju];
    central_oracle[ju] = om.central[ju];
    const double tol = moment_flag_tolerance(j);
    raw_ok[ju] = std::fabs(raw[ju] - raw_oracle[ju]) /
                     (1.0 + std::fabs(raw_oracle[ju])) <=
                 tol;
    central_ok[ju] = std::fabs(central[ju] - central_oracle[ju]) /
                         (1.0 + std::fabs(central_oracle[ju])) <=
                     tol;
  }

  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();
  os << '{';
  emit_params(os, params);
  os << ",\"x\":" << fmt17(o.x) << ",\"order\":" << o.order << ',';
  emit_array(os, "raw", raw);
  os << ',';
  emit_array(os, "raw_oracle", raw_oracle);
  os << ',';
  emit_flags(os, "raw_consistent", raw_ok);
  os << ',';
  emit_array(os, "central", central);
  os << ',';
  emit_array(os, "central_oracle", central_oracle);
  os << ',';
  emit_flags(os, "central_consistent", central_ok);
  if (o.order >= 2) {
    os << ",\"phi\":" << fmt17(second_central_closed(params, o.x))
       << ",\"psi\":" << fmt17(psi_local(params, o.x));
  }
  os << ",\"tail_mass_deficit\":" << fmt17(om.tail_mass_deficit) << "}\n";
  return 0;
}

// ---- verify ----

struct VerifyOpt {
  std::string suite;
  std::int64_t k_max = 1'000'000;
  std::string output;
};

int cmd_verify(const VerifyOpt& o, std::ostream& fallback) {
  TruncationPolicy policy;
  policy.k_max = o.k_max;
  const VerifyReport report = run_verify_suite(o.suite, policy);
  const int code = verify_exit_code(report);

  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();
  os << "{\"suite\":" << jesc(report.suite) << ",\"total\":" << report.total
     << ",\"failed\":" << report.failed
     << ",\"expected_failed\":" << report.expected_failed
     << ",\"unexpected_failed\":" << report.unexpected_failed
     << ",\"exit\":" << code << ",\"checks\":[";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    if (i) os << ',';
    const VerifyCheck& c = report.checks[i];
    os << "{\"id\":" << jesc(c.id) << ",\"detail\":" << jesc(c.detail)
       << ",\"pass\":" << (c.pass ? "true" : "false") << ",\"status\":"
       << jesc(c.pass ? "pass" : (c.expected ? "expected" : "fail"))
       << ",\"value\":" << fmt17(c.value) << ",\"oracle\":" << fmt17(c.oracle)
       << ",\"rel_error\":" << fmt17(c.rel_error) << '}';
  }
  os << "]}\n";
  return code;
}

// ---- bounds ----

struct BoundsOpt {
  ParamCli params;
  std::string theorem;
  std::string f;
  double beta = 1.0;
  double b = 1.0;
  std::string x_grid = "0.1:0.9:9";
  double domain_cap = 50.0;
  std::int64_t k_max = 1'000'000;
  std::string output;
};

void emit_bound_report(std::ostream& os, const BoundReport& r, bool interval) {
  os << "{\"theorem\":" << jesc(theorem_name(r.theorem_id));
  if (interval) {
    os << ",\"x_lo\":" << fmt17(r.x_lo) << ",\"x_hi\":" << fmt17(r.x_hi);
  } else {
    os << ",\"x\":" << fmt17(r.x);
  }
  os << ",\"bound\":" << fmt17(r.bound_value)
     << ",\"measured_error\":" << fmt17(r.measured_error)
     << ",\"dominated\":" << (r.measured_error <= r.bound_value ? "true" : "false")
     << ",\"constants\":{";
  for (std::size_t i = 0; i < r.constants.size(); ++i) {
    if (i) os << ',';
    os << jesc(r.constants[i].first) << ':' << fmt17(r.constants[i].second);
  }
  os << "},\"tail_mass_deficit\":" << fmt17(r.tail_mass_deficit) << '}';
}

int cmd_bounds(const BoundsOpt& o, std::ostream& fallback) {
  const OperatorParams params = o.params.build();
  const FunctionSpec spec = FunctionSpec::parse(o.f);
  const RealFunction fn = spec.as_function();
  TruncationPolicy policy;
  policy.k_max = o.k_max;
  const double cap =
      params.finite_support() ? 1.0 : o.domain_cap;

  std::vector<BoundReport> reports;
  bool interval = false;
  if (o.theorem == "local") {
    const double c = calibrate_theorem1_C(params, fn, cap, 33, 1024, policy);
    for (double x : parse_x_grid(o.x_grid)) {
      reports.push_back(
          theorem1_bound(params, fn, x, c, cap, 1024, policy));
    }
  } else if (o.theorem == "lipschitz") {
    const LipschitzClass lip =
        estimate_lipschitz_M(fn, o.beta, 0.0, cap, 257);
    for (double x : parse_x_grid(o.x_grid)) {
      reports.push_back(lipschitz_bound(params, fn, lip, x, policy));
    }
  } else if (o.theorem == "weighted") {
    double m_f = 0.0;
    for (int i = 0; i < 513; ++i) {
      const double x = (o.b + 1.0) * static_cast<double>(i) / 512.0;
      m_f = std::max(m_f, std::fabs(fn(x)) / (1.0 + x * x));
    }
    reports.push_back(
        weighted_bound_L10(params, fn, o.b, m_f, 257, 1024, policy));
    interval = true;
  } else if (o.theorem == "rate") {
    const RemarkConstants remark = fit_remark_constants(
        params.lambda, params.p, params.alpha, 0.0, std::min(cap, 5.0),
        {params.n, 2 * params.n, 4 * params.n, 8 * params.n});
    reports.push_back(
        rate_bound_thm4(params, fn, remark, cap, 257, 1024, policy));
    interval = true;
  } else {
    throw std::invalid_argument(
        "--theorem must be local, lipschitz, weighted, or rate");
  }

  for (const BoundReport& r : reports) {
    require_tail(r.tail_mass_deficit <= policy.tail_mass_epsilon * 16.0);
  }

  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();
  os << '{';
  emit_params(os, params);
  os << ",\"f\":" << jesc(spec.description())
     << ",\"theorem\":" << jesc(o.theorem) << ",\"reports\":[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) os << ',';
    emit_bound_report(os, reports[i], interval);
  }
  os << "]}\n";
  return 0;
}

// ---- converge ----

struct ConvergeOpt {
  ParamCli params;
  std::string f;
  std::string n_list;
  std::string x_grid;
  std::int64_t k_max = 1'000'000;
  std::string output;
};

int cmd_converge(const ConvergeOpt& o, std::ostream& fallback) {
  const std::vector<int> ns = parse_n_list(o.n_list);
  Lambda lambda;
  int p;
  AlphaSpec alpha;
  if (!o.params.case_name.empty()) {
    ParamCli pc = o.params;
    pc.n = ns.front();
    const OperatorParams base = pc.build();
    lambda = base.lambda;
    p = base.p;
    alpha = base.alpha;
  } else {
    if (o.params.lambda != -1 && o.params.lambda != 0) {
      throw std::invalid_argument("--lambda must be -1 or 0");
    }
    lambda = o.params.lambda == -1 ? Lambda::minus_one : Lambda::zero;
    p = o.params.p < 0 ? 0 : o.params.p;
    alpha = o.params.alpha.empty() ? AlphaSpec::literal(0.0)
                                   : parse_alpha(o.params.alpha);
  }
  const FunctionSpec spec = FunctionSpec::parse(o.f);
  TruncationPolicy policy;
  policy.k_max = o.k_max;
  const ConvergenceTable table =
      convergence_experiment(lambda, p, alpha, spec.as_function(),
                             parse_x_grid(o.x_grid), ns, policy);

  OutputTarget target(o.output, fallback);
  std::ostream& os = target.stream();
  os << "{\"lambda\":" << static_cast<int>(lambda) << ",\"p\":" << p
     << ",\"alpha_rule\":" << (alpha.over_n ? "true" : "false")
     << ",\"alpha_numerator\":" << fmt17(alpha.numerator)
     << ",\"f\":" << jesc(spec.description()) << ",\"n_list\":[";
  for (std::size_t i = 0; i < table.n_list.size(); ++i) {
    if (i) os << ',';
    os << table.n_list[i];
  }
  os << "],\"points\":[";
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    if (i) os << ',';
    const ConvergencePoint& pt = table.points[i];
    os << "{\"x\":" << fmt17(pt.x) << ',';
    emit_array(os, "errors", pt.errors);
    os << ",\"slope\":" << fmt17(pt.slope)
       << ",\"slope_valid\":" << (pt.slope_valid ? "true" : "false")
       << ",\"excluded\":" << pt.excluded << '}';
  }
  os << "],\"min_slope\":" << fmt17(table.min_slope)
     << ",\"median_slope\":" << fmt17(table.median_slope)
     << ",\"any_slope\":" << (table.any_slope ? "true" : "false") << "}\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"generalized positive linear operator toolkit"};
  app.require_subcommand(1);

  WeightsOpt wo;
  CLI::App* weights = app.add_subcommand("weights", "basis weights at a point");
  wo.params.attach(weights, false);
  weights->add_option("--x", wo.x, "evaluation point")->required();
  weights->add_option("--k-max", wo.k_max, "series index cap");
  weights->add_option("--tail-eps", wo.tail_eps, "series tail mass target");
  weights->add_option("--format", wo.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  weights->add_option("--output", wo.output, "output file (default stdout)");

  ApplyOpt ao;
  CLI::App* apply_cmd = app.add_subcommand("apply", "evaluate L(f;x) on a grid");
  ao.params.attach(apply_cmd, true);
  apply_cmd->add_option("--f", ao.f, "builtin name or expression")->required();
  apply_cmd->add_option("--x-grid", ao.x_grid, "grid a:b:m")->required();
  apply_cmd->add_option("--k-max", ao.k_max, "series index cap");
  apply_cmd->add_option("--tail-eps", ao.tail_eps, "series tail mass target");
  apply_cmd->add_option("--format", ao.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  apply_cmd->add_option("--output", ao.output, "output file (default stdout)");

  MomentsOpt mo;
  CLI::App* moments_cmd =
      app.add_subcommand("moments", "closed-form and oracle moments at x");
  mo.params.attach(moments_cmd, true);
  moments_cmd->add_option("--x", mo.x, "evaluation point")->required();
  moments_cmd->add_option("--order", mo.order, "highest order (1..4)");
  moments_cmd->add_option("--k-max", mo.k_max, "series index cap");
  moments_cmd->add_option("--output", mo.output, "output file");

  VerifyOpt vo;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "closed-form vs oracle verification suites");
  verify_cmd
      ->add_option("--suite", vo.suite,
                   "moments|central|special-cases|lemma1|all")
      ->required()
      ->check(CLI::IsMember(
          {"moments", "central", "special-cases", "lemma1", "all"}));
  verify_cmd->add_option("--k-max", vo.k_max, "series index cap");
  verify_cmd->add_option("--output", vo.output, "output file");

  BoundsOpt bo;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "error-bound reports per theorem");
  bo.params.attach(bounds_cmd, true);
  bounds_cmd
      ->add_option("--theorem", bo.theorem, "local|lipschitz|weighted|rate")
      ->required()
      ->check(CLI::IsMember({"local", "lipschitz", "weighted", "rate"}));
  bounds_cmd->add_option("--f", bo.f, "builtin name or expression")->required();
  bounds_cmd->add_option("--beta", bo.beta, "Lipschitz exponent (0,1]");
  bounds_cmd->add_option("--b", bo.b, "interval end for the weighted bound");
  bounds_cmd->add_option("--x-grid", bo.x_grid, "grid a:b:m for point bounds");
  bounds_cmd->add_option("--domain-cap", bo.domain_cap,
                         "sup truncation for the series domain");
  bounds_cmd->add_option("--k-max", bo.k_max, "series index cap");
  bounds_cmd->add_option("--output", bo.output, "output file");

  ConvergeOpt co;
  CLI::App* converge_cmd =
      app.add_subcommand("converge", "error decay across n with fitted slope");
  co.params.attach(converge_cmd, true);
  converge_cmd->add_option("--f", co.f, "builtin name or expression")
      ->required();
  converge_cmd->add_option("--n-list", co.n_list, "comma-separated n values")
      ->required();
  converge_cmd->add_option("--x-grid", co.x_grid, "grid a:b:m")->required();
  converge_cmd->add_option("--k-max", co.k_max, "series index cap");
  converge_cmd->add_option("--output", co.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (weights->parsed()) return cmd_weights(wo, out);
    if (apply_cmd->parsed()) return cmd_apply(ao, out);
    if (moments_cmd->parsed()) return cmd_moments(mo, out);
    if (verify_cmd->parsed()) return cmd_verify(vo, out);
    if (bounds_cmd->parsed()) return cmd_bounds(bo, out);
    if (converge_cmd->parsed()) return cmd_converge(co, out);
  } catch (const ExpressionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace pedops

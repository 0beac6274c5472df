#include "pedops/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pedops {

namespace {

double eval_checked(const RealFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "function not evaluable at x=" << x;
    throw std::runtime_error(os.str());
  }
  return v;
}

double weighted_diff(const std::vector<double>& fv, const RealFunction& f,
                     ModulusKind kind, double lo, double eta, std::size_t i,
                     std::size_t m, double h_end, bool endpoint) {
  const double x = lo + static_cast<double>(i) * eta;
  const double f0 = fv[i];
  switch (kind) {
    case ModulusKind::second_order: {
      double f1, f2;
      if (endpoint) {
        f1 = eval_checked(f, x + h_end);
        f2 = eval_checked(f, x + 2.0 * h_end);
      } else {
        f1 = fv[i + m];
        f2 = fv[i + 2 * m];
      }
      return std::fabs(f2 - 2.0 * f1 + f0);
    }
    case ModulusKind::weighted: {
      const double h = endpoint ? h_end : static_cast<double>(m) * eta;
      const double f1 = endpoint ? eval_checked(f, x + h) : fv[i + m];
      const double y = x + h;
      return std::fabs(f1 - f0) / (1.0 + y * y);
    }
    default: {
      const double f1 =
          endpoint ? eval_checked(f, x + h_end) : fv[i + m];
      return std::fabs(f1 - f0);
    }
  }
}

}  // namespace

ModulusEstimate modulus(const RealFunction& f, ModulusKind kind, double delta,
                        double lo, double hi, int grid_n) {
  if (grid_n < 64) {
    throw std::invalid_argument("modulus: grid_n must be at least 64");
  }
  if (hi <= lo) {
    throw std::invalid_argument("modulus: empty domain");
  }
  ModulusEstimate est;
  est.kind = kind;
  est.delta = delta;
  est.grid_points = grid_n;
  est.domain_cap = hi;
  if (!(delta > 0.0)) return est;

  const std::size_t lattice = 4 * static_cast<std::size_t>(grid_n);
  const double eta = (hi - lo) / static_cast<double>(lattice);
  std::vector<double> fv(lattice + 1);
  for (std::size_t i = 0; i <= lattice; ++i) {
    fv[i] = eval_checked(f, lo + static_cast<double>(i) * eta);
  }

  const int span = (kind == ModulusKind::second_order) ? 2 : 1;
  const double h_cap = (hi - lo) / span;
  const double h_end = std::min(delta, h_cap);
  const std::size_t m_max = std::min(
      lattice / span, static_cast<std::size_t>(std::floor(h_end / eta)));

  double best = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const std::size_t i_max = lattice - span * m;
    for (std::size_t i = 0; i <= i_max; ++i) {
      best = std::max(best,
                      weighted_diff(fv, f, kind, lo, eta, i, m, 0.0, false));
    }
  }
  // endpoint offset h = delta itself (off lattice)
  const std::size_t i_end = static_cast<std::size_t>(
      std::floor((hi - lo - span * h_end) / eta));
  for (std::size_t i = 0; i <= i_end && i <= lattice; ++i) {
    best =
        std::max(best, weighted_diff(fv, f, kind, lo, eta, i, 0, h_end, true));
  }
  est.value = best;
  return est;
}

LipschitzClass estimate_lipschitz_M(const RealFunction& f, double beta,
                                    double lo, double hi, int grid_n) {
  if (!(beta > 0.0) || beta > 1.0) {
    throw std::invalid_argument("estimate_lipschitz_M: beta must be in (0,1]");
  }
  LipschitzClass lip;
  lip.beta = beta;
  std::vector<double> xs(static_cast<std::size_t>(grid_n));
  std::vector<double> fs(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(grid_n - 1);
    xs[static_cast<std::size_t>(i)] = x;
    fs[static_cast<std::size_t>(i)] = eval_checked(f, x);
  }
  for (int i = 0; i < grid_n; ++i) {
    for (int j = i + 1; j < grid_n; ++j) {
      const double x = xs[static_cast<std::size_t>(i)];
      const double y = xs[static_cast<std::size_t>(j)];
      if (x + y <= 0.0) continue;
      const double q = std::fabs(fs[static_cast<std::size_t>(j)] -
                                 fs[static_cast<std::size_t>(i)]) *
                       std::pow(x + y, beta / 2.0) /
                       std::pow(y - x, beta);
      if (q > lip.M) {
        lip.M = q;
        lip.arg_x = x;
        lip.arg_y = y;
      }
    }
  }
  if (lip.M > 1e12) {
    throw std::runtime_error(
        "estimate_lipschitz_M: not in the Lipschitz class at sampled scale");
  }
  return lip;
}

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::local_thm1: return "local";
    case TheoremId::lipschitz_L7: return "lipschitz";
    case TheoremId::weighted_L10: return "weighted";
    case TheoremId::rate_thm4: return "rate";
  }
  return "?";
}

namespace {

double modulus_domain_hi(const OperatorParams& params, double domain_cap) {
  return params.finite_support() ? 1.0 : domain_cap;
}

struct Thm1Terms {
  double c1 = 0.0;
  double psi = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double error = 0.0;
  double tail = 0.0;
};

Thm1Terms theorem1_terms(const OperatorParams& params, const RealFunction& f,
                         double x, double domain_cap, int modulus_grid,
                         const TruncationPolicy& policy) {
  Thm1Terms t;
  t.c1 = first_central_closed(params, x);
  t.psi = psi_local(params, x);
  const double hi = modulus_domain_hi(params, domain_cap);
  t.w1 = modulus(f, ModulusKind::first_order, t.c1, 0.0, hi, modulus_grid)
             .value;
  t.w2 = modulus(f, ModulusKind::second_order, std::sqrt(t.psi) / 2.0, 0.0, hi,
                 modulus_grid)
             .value;
  const ApplyResult ar = apply(params, f, x, policy);
  t.error = std::fabs(ar.value - eval_checked(f, x));
  t.tail = ar.tail_mass_deficit;
  return t;
}

}  // namespace

double calibrate_theorem1_C(const OperatorParams& params, const RealFunction& f,
                            double domain_cap, int calibration_points,
                            int modulus_grid, const TruncationPolicy& policy) {
  const double hi = modulus_domain_hi(params, domain_cap);
  const double x_hi = params.finite_support() ? 1.0 : std::min(domain_cap, 5.0);
  double c = 1.0;
  for (int i = 0; i < calibration_points; ++i) {
    const double x = x_hi * (static_cast<double>(i) + 0.5) /
                     static_cast<double>(calibration_points);
    (void)hi;
    const Thm1Terms t =
        theorem1_terms(params, f, x, domain_cap, modulus_grid, policy);
    if (t.w2 > 0.0) {
      c = std::max(c, (t.error - t.w1) / t.w2);
    }
  }
  return std::min(c, 10.0);
}

BoundReport theorem1_bound(const OperatorParams& params, const RealFunction& f,
                           double x, double calibrated_C, double domain_cap,
                           int modulus_grid, const TruncationPolicy& policy) {
  const Thm1Terms t =
      theorem1_terms(params, f, x, domain_cap, modulus_grid, policy);
  BoundReport report;
  report.theorem_id = TheoremId::local_thm1;
  report.x = x;
  report.bound_value = t.w1 + calibrated_C * t.w2;
  report.measured_error = t.error;
  report.tail_mass_deficit = t.tail;
  report.constants = {{"C", calibrated_C},
                      {"first_central", t.c1},
                      {"psi", t.psi},
                      {"omega1", t.w1},
                      {"omega2", t.w2}};
  return report;
}

BoundReport lipschitz_bound(const OperatorParams& params, const RealFunction& f,
                            const LipschitzClass& lip, double x,
                            const TruncationPolicy& policy) {
  if (!(x > 0.0)) {
    throw std::domain_error("lipschitz_bound: bound undefined at x=0");
  }
  const double phi = second_central_closed(params, x);
  const ApplyResult ar = apply(params, f, x, policy);
  BoundReport report;
  report.theorem_id = TheoremId::lipschitz_L7;
  report.x = x;
  report.bound_value = lip.M * std::pow(phi / x, lip.beta / 2.0);
  report.measured_error = std::fabs(ar.value - eval_checked(f, x));
  report.tail_mass_deficit = ar.tail_mass_deficit;
  report.constants = {{"M", lip.M}, {"beta", lip.beta}, {"phi", phi}};
  return report;
}

BoundReport weighted_bound_L10(const OperatorParams& params,
                               const RealFunction& f, double b, double M_f,
                               int grid_n, int modulus_grid,
                               const TruncationPolicy& policy) {
  if (!(b > 0.0) || !params.in_domain(b + 1.0)) {
    throw std::invalid_argument("weighted_bound_L10: invalid interval end");
  }
  double big_phi = 0.0;
  double sup_error = 0.0;
  double tail = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double x =
        b * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double fx = eval_checked(f, x);
    if (std::fabs(fx) > M_f * (1.0 + x * x) * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "weighted_bound_L10: growth bound violated at x=" << x;
      throw std::runtime_error(os.str());
    }
    big_phi = std::max(big_phi, second_central_closed(params, x));
    const ApplyResult ar = apply(params, f, x, policy);
    sup_error = std::max(sup_error, std::fabs(ar.value - fx));
    tail = std::max(tail, ar.tail_mass_deficit);
  }
  const double w =
      modulus(f, ModulusKind::restricted_b, std::sqrt(big_phi), 0.0, b + 1.0,
              modulus_grid)
          .value;
  BoundReport report;
  report.theorem_id = TheoremId::weighted_L10;
  report.x_lo = 0.0;
  report.x_hi = b;
  report.bound_value = 4.0 * M_f * (1.0 + b * b) * big_phi + 2.0 * w;
  report.measured_error = sup_error;
  report.tail_mass_deficit = tail;
  report.constants = {
      {"M_f", M_f}, {"b", b}, {"Phi", big_phi}, {"omega_b1", w}};
  return report;
}

std::vector<KorovkinRow> korovkin_check_L9(Lambda lambda, int p,
                                           const AlphaSpec& alpha_rule,
                                           const std::vector<int>& n_list,
                                           double domain_cap, int grid_n) {
  std::vector<KorovkinRow> rows;
  for (int n : n_list) {
    OperatorParams params{n, p, alpha_rule, lambda};
    params.validate_order(2);
    const double hi = params.finite_support()
                          ? 1.0
                          : std::min(domain_cap, params.domain_sup());
    KorovkinRow row;
    row.n = n;
    for (int g = 0; g < grid_n; ++g) {
      const double x =
          hi * static_cast<double>(g) / static_cast<double>(grid_n - 1);
      const double w = 1.0 + x * x;
      double xp = 1.0;
      for (int i = 0; i <= 2; ++i) {
        row.norm[static_cast<std::size_t>(i)] =
            std::max(row.norm[static_cast<std::size_t>(i)],
                     std::fabs(raw_moment_closed(params, i, x) - xp) / w);
        xp *= x;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

BoundReport rate_bound_thm4(const OperatorParams& params, const RealFunction& f,
                            const RemarkConstants& remark, double domain_cap,
                            int grid_n, int modulus_grid,
                            const TruncationPolicy& policy) {
  if (!(remark.A1 > 0.0) || !(remark.A2 > 0.0)) {
    throw std::invalid_argument("rate_bound_thm4: fit the growth constants first");
  }
  const double K =
      2.0 * (1.0 + remark.A1 + std::sqrt(remark.A1) +
             std::sqrt(remark.A1 * remark.A2));
  const double cap_value =
      eval_checked(f, domain_cap) / (1.0 + domain_cap * domain_cap);
  double left = 0.0;
  double tail = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double x =
        domain_cap * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const ApplyResult ar = apply(params, f, x, policy);
    const double w = std::pow(1.0 + x * x, 2.5);
    left = std::max(left, std::fabs(ar.value - eval_checked(f, x)) / w);
    tail = std::max(tail, ar.tail_mass_deficit);
  }
  const double delta = 1.0 / std::sqrt(static_cast<double>(params.n));
  const double omega =
      modulus(f, ModulusKind::weighted, delta, 0.0, domain_cap, modulus_grid)
          .value;
  BoundReport report;
  report.theorem_id = TheoremId::rate_thm4;
  report.x_lo = 0.0;
  report.x_hi = domain_cap;
  report.bound_value = K * omega;
  report.measured_error = left;
  report.tail_mass_deficit = tail;
  report.constants = {{"K", K},
                      {"A1", remark.A1},
                      {"A2", remark.A2},
                      {"Omega", omega},
                      {"delta", delta},
                      {"limit_value", cap_value}};
  return report;
}

ConvergenceTable convergence_experiment(Lambda lambda, int p,
                                        const AlphaSpec& alpha,
                                        const RealFunction& f,
                                        const std::vector<double>& x_grid,
                                        const std::vector<int>& n_list,
                                        const TruncationPolicy& policy) {
  if (n_list.size() < 4) {
    throw std::invalid_argument(
        "convergence_experiment: need at least 4 values of n");
  }
  ConvergenceTable table;
  table.n_list = n_list;
  std::vector<double> slopes;
  for (double x : x_grid) {
    ConvergencePoint point;
    point.x = x;
    std::vector<double> log_n, log_e;
    for (int n : n_list) {
      OperatorParams params{n, p, alpha, lambda};
      params.validate();
      const ApplyResult ar = apply(params, f, x, policy);
      const double e = std::fabs(ar.value - eval_checked(f, x));
      point.errors.push_back(e);
      if (e < 1e-13) {
        ++point.excluded;  // at the truncation/rounding noise floor
      } else {
        log_n.push_back(std::log(static_cast<double>(n)));
        log_e.push_back(std::log(e));
      }
    }
    if (log_n.size() >= 2) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double m = static_cast<double>(log_n.size());
      for (std::size_t i = 0; i < log_n.size(); ++i) {
        sx += log_n[i];
        sy += log_e[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_e[i];
      }
      point.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      point.slope_valid = true;
      slopes.push_back(point.slope);
    }
    table.points.push_back(std::move(point));
  }
  if (!slopes.empty()) {
    table.any_slope = true;
    std::sort(slopes.begin(), slopes.end());
    table.min_slope = slopes.front();
    const std::size_t m = slopes.size();
    table.median_slope = (m % 2 == 1)
                             ? slopes[m / 2]
                             : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
  }
  return table;
}

}  // namespace pedops

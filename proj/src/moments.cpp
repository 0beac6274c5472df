#include "pedops/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pedops/combinatorics.hpp"

namespace pedops {

namespace {

double guarded_inverse(double den, const char* what) {
  if (std::fabs(den) < 1e-12) {
    throw std::domain_error(std::string("moment undefined for this alpha: ") +
                            what);
  }
  return 1.0 / den;
}

// Power-law tail estimate for sum_{m>k} a_m when a_m ~ c m^{-s}:
// leading Euler-Maclaurin terms a_k k/(s-1) - a_k/2, with s-1 taken
// from the local increment ratio r = a_{k+1}/a_k via s ~ k(1-r).
double tail_estimate(double a_k, double k, double r) {
  if (!(r > 0.0) || r >= 1.0) return -1.0;  // not (yet) decaying
  const double s_minus_1 = k * (1.0 - r) - 1.0;
  if (s_minus_1 <= 0.1) return -1.0;
  const double est = a_k * k / s_minus_1 - 0.5 * a_k;
  return est > 0.0 ? est : 0.0;
}

}  // namespace

OracleMoments moment_oracle(const OperatorParams& params, double x,
                            const TruncationPolicy& policy) {
  params.validate();
  detail::WeightSeries series(params, x);
  detail::KahanSum mass;
  std::array<detail::KahanSum, 5> raw;    // raw[0] duplicates mass
  std::array<detail::KahanSum, 5> cen;
  const double inv_n = 1.0 / static_cast<double>(params.n);

  OracleMoments result;
  const bool finite = params.finite_support();
  std::array<double, 5> tail{};  // raw tail corrections (series case)
  bool captured = true;

  while (true) {
    const double w = series.weight();
    const double t = static_cast<double>(series.k()) * inv_n;
    const double d = t - x;
    mass.add(w);
    double tp = 1.0, dp = 1.0;
    for (int j = 0; j <= 4; ++j) {
      raw[static_cast<std::size_t>(j)].add(w * tp);
      cen[static_cast<std::size_t>(j)].add(w * dp);
      tp *= t;
      dp *= d;
    }
    ++result.terms;

    if (series.done()) break;
    if (!finite) {
      const std::int64_t k = series.k();
      const bool at_cap = k >= policy.k_max;
      // stopping checks are amortized: every 1024 terms once the mass
      // target is met; at the term cap a last correction attempt is
      // made with a looser acceptance bound before giving up
      if (at_cap || ((k & 1023) == 0 && k >= 1024 &&
                     1.0 - mass.value() <= policy.tail_mass_epsilon)) {
        const double cap = at_cap ? 2e-3 : 2e-4;
        const double r_w = weight_ratio(params, k, x);
        bool all_ok = true;
        std::array<double, 5> est{};
        const double kd = static_cast<double>(k);
        for (int j = 0; j <= 4 && all_ok; ++j) {
          const double a = w * std::pow(t, j);
          const double r = r_w * std::pow((kd + 1.0) / kd, j);
          const double e = tail_estimate(a, kd, r);
          if (e < 0.0) {
            all_ok = false;
            break;
          }
          est[static_cast<std::size_t>(j)] = e;
          const double scale =
              1.0 + std::fabs(raw[static_cast<std::size_t>(j)].value());
          const double s_minus_1 = kd * (1.0 - r) - 1.0;
          // fast-decay tier: tail negligible outright; slow power-law
          // tier: the correction itself is applied, so it only has to
          // be accurate, not tiny; its own error shrinks like 1/k
          const bool fast_ok = e <= 1e-12 * scale;
          const bool slow_ok = s_minus_1 < 40.0 && e <= cap * scale;
          if (!fast_ok && !slow_ok) all_ok = false;
        }
        if (all_ok) {
          tail = est;
          break;
        }
        if (at_cap) {
          captured = false;
          break;
        }
      }
    }
    series.advance();
  }

  for (int j = 0; j <= 4; ++j) {
    result.raw[static_cast<std::size_t>(j)] =
        raw[static_cast<std::size_t>(j)].value() +
        tail[static_cast<std::size_t>(j)];
  }
  // central tails are the binomial transform of the raw ones, so the
  // transform identity between the two sides is preserved exactly
  for (int j = 0; j <= 4; ++j) {
    double ct = 0.0;
    double xp = 1.0;
    for (int i = j; i >= 0; --i) {
      const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
      ct += sign * binomial(j, i) * xp * tail[static_cast<std::size_t>(i)];
      xp *= x;
    }
    result.central[static_cast<std::size_t>(j)] =
        cen[static_cast<std::size_t>(j)].value() + ct;
  }
  result.tail_mass_deficit = 1.0 - mass.value();
  result.tail_captured = captured;
  return result;
}

double raw_moment_oracle(const OperatorParams& params, int j, double x,
                         const TruncationPolicy& policy) {
  if (j < 0 || j > 4) {
    throw std::invalid_argument("raw_moment_oracle: order must be in 0..4");
  }
  return moment_oracle(params, x, policy).raw[static_cast<std::size_t>(j)];
}

double raw_moment_closed(const OperatorParams& params, int j, double x) {
  params.validate_order(j);
  if (!params.in_domain(x)) {
    throw std::domain_error("raw_moment_closed: x outside the domain");
  }
  const double a = params.alpha_value();
  const int lam = params.lam();
  const double n = params.n;
  const double np = params.n + params.p;
  switch (j) {
    case 0:
      return 1.0;
    case 1:
      return (np / n) * x * guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a");
    case 2: {
      const double inv = guarded_inverse(1.0 - lam * a, "1-la") *
                         guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a");
      const double bracket =
          (np + lam + 1) * x * (x + a) *
              guarded_inverse(1.0 - 2 * (lam + 1) * a, "1-2(l+1)a") +
          x * (1.0 + lam * x);
      return np / (n * n) * inv * bracket;
    }
    case 3: {
      const double A = np + 2 * lam + 1;
      const double B = np + 2 * (2 * lam + 1);
      const double inv1 = guarded_inverse(1.0 - (3 * lam + 2) * a, "1-(3l+2)a");
      const double inv2 = guarded_inverse(1.0 - (5 * lam + 3) * a, "1-(5l+3)a");
      const double bracket =
          A * B * (x + a) * (x + 2 * a) * inv1 * inv2 + 3.0 * A * (x + a) * inv1 +
          1.0;
      return np * x / (n * n * n) *
             guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a") * bracket;
    }
    case 4: {
      const double A = np + 2 * lam + 1;
      const double B = np + 2 * (2 * lam + 1);
      const double C = np + 3 * (2 * lam + 1);
      const double inv1 = guarded_inverse(1.0 - (3 * lam + 2) * a, "1-(3l+2)a");
      const double inv2 = guarded_inverse(1.0 - (5 * lam + 3) * a, "1-(5l+3)a");
      const double inv3 = guarded_inverse(1.0 - (7 * lam + 4) * a, "1-(7l+4)a");
      const double bracket =
          A * B * C * (x + a) * (x + 2 * a) * (x + 3 * a) * inv1 * inv2 * inv3 +
          6.0 * A * B * (x + a) * (x + 2 * a) * inv1 * inv2 +
          7.0 * A * (x + a) * inv1 + 1.0;
      return np * x / (n * n * n * n) *
             guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a") * bracket;
    }
    default:
      throw std::invalid_argument("raw_moment_closed: order must be in 0..4");
  }
}

double moment_flag_tolerance(int j) { return j <= 2 ? 1e-8 : 1e-6; }

namespace {

FlaggedValue flag_against(double value, double oracle, int j) {
  FlaggedValue fv;
  fv.value = value;
  fv.oracle = oracle;
  fv.rel_error = std::fabs(value - oracle) / (1.0 + std::fabs(oracle));
  fv.consistent = fv.rel_error <= moment_flag_tolerance(j);
  return fv;
}

// generic sum_k w_k (k/n)^j for the oracle comparison of higher orders
double power_sum_oracle(const OperatorParams& params, int j, double x,
                        const TruncationPolicy& policy) {
  detail::WeightSeries series(params, x);
  detail::KahanSum sum;
  detail::KahanSum mass;
  const double inv_n = 1.0 / static_cast<double>(params.n);
  while (true) {
    const double w = series.weight();
    const double t = static_cast<double>(series.k()) * inv_n;
    sum.add(w * std::pow(t, j));
    mass.add(w);
    if (series.done()) break;
    if (!params.finite_support()) {
      if (series.k() >= policy.k_max) break;
      if (1.0 - mass.value() <= policy.tail_mass_epsilon &&
          w * std::pow(t + 1.0, j) < 1e-14 * (1.0 + std::fabs(sum.value()))) {
        break;
      }
    }
    series.advance();
  }
  return sum.value();
}

}  // namespace

double raw_moment_stirling_value(const OperatorParams& params, int j,
                                 double x) {
  params.validate();
  if (j < 1 || j > StirlingTable::kMaxSupportedOrder) {
    throw std::invalid_argument("raw_moment_stirling: order out of range");
  }
  const double a = params.alpha_value();
  const int lam = params.lam();
  const double np = params.n + params.p;
  double sum = 0.0;
  for (int i = 0; i < j; ++i) {
    const int jm = j - i;
    const double phi = (lam == -1) ? falling_factorial(np, jm)
                                   : rising_factorial(np, jm);
    sum += static_cast<double>(stirling2(j, jm)) * phi *
           factorial_power(x, jm, -a) /
           factorial_power(1.0, jm + (lam + 1), -a);
  }
  return sum / std::pow(static_cast<double>(params.n), j);
}

FlaggedValue raw_moment_stirling(const OperatorParams& params, int j, double x,
                                 const TruncationPolicy& policy) {
  const double value = raw_moment_stirling_value(params, j, x);
  const double oracle = (j <= 4)
                            ? raw_moment_oracle(params, j, x, policy)
                            : power_sum_oracle(params, j, x, policy);
  return flag_against(value, oracle, j);
}

std::array<double, 5> central_from_raw(const std::array<double, 5>& raw,
                                       double x) {
  std::array<double, 5> central{};
  central[0] = raw[0];
  for (int j = 1; j <= 4; ++j) {
    double v = raw[static_cast<std::size_t>(j)];
    double xp = x;
    for (int i = j - 1; i >= 0; --i) {
      v -= binomial(j, i) * xp * central[static_cast<std::size_t>(i)];
      xp *= x;
    }
    central[static_cast<std::size_t>(j)] = v;
  }
  return central;
}

double first_central_closed(const OperatorParams& params, double x) {
  params.validate();
  const double a = params.alpha_value();
  const int lam = params.lam();
  const double den = params.n * (1.0 - (lam + 1) * a);
  guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a");
  return x * (params.p + params.n * (lam + 1) * a) / den;
}

double first_central_printed(const OperatorParams& params, double x) {
  params.validate();
  const double a = params.alpha_value();
  const int lam = params.lam();
  guarded_inverse(1.0 - (lam + 1) * a, "1-(l+1)a");
  return (params.p * x + (lam + 1) * a) /
         (params.n * (1.0 - (lam + 1) * a));
}

namespace {

std::array<double, 5> central_closed_array(const OperatorParams& params,
                                           double x) {
  std::array<double, 5> raw;
  for (int j = 0; j <= 4; ++j) {
    raw[static_cast<std::size_t>(j)] = raw_moment_closed(params, j, x);
  }
  return central_from_raw(raw, x);
}

}  // namespace

double second_central_closed(const OperatorParams& params, double x) {
  params.validate_order(2);
  const double m1 = raw_moment_closed(params, 1, x);
  const double m2 = raw_moment_closed(params, 2, x);
  const double c2 = m2 - 2.0 * x * m1 + x * x;
  return c2 > 0.0 ? c2 : 0.0;
}

double psi_local(const OperatorParams& params, double x) {
  const double c1 = first_central_closed(params, x);
  return second_central_closed(params, x) + c1 * c1;
}

FlaggedValue central_moment_closed(const OperatorParams& params, int j,
                                   double x, const TruncationPolicy& policy) {
  if (j < 1 || j > 4) {
    throw std::invalid_argument("central_moment_closed: order must be 1..4");
  }
  params.validate_order(j);
  const double value =
      (j == 1) ? first_central_closed(params, x)
               : central_closed_array(params, x)[static_cast<std::size_t>(j)];
  const OracleMoments om = moment_oracle(params, x, policy);
  return flag_against(value, om.central[static_cast<std::size_t>(j)], j);
}

MomentReport moment_report(const OperatorParams& params, double x,
                           const TruncationPolicy& policy) {
  params.validate_order(4);
  MomentReport report;
  report.params = params;
  report.x = x;
  const OracleMoments om = moment_oracle(params, x, policy);
  report.raw_oracle = om.raw;
  report.central_oracle = om.central;
  report.tail_mass_deficit = om.tail_mass_deficit;
  for (int j = 0; j <= 4; ++j) {
    report.raw[static_cast<std::size_t>(j)] = raw_moment_closed(params, j, x);
  }
  report.central = central_from_raw(report.raw, x);
  report.central[1] = first_central_closed(params, x);
  for (int j = 0; j <= 4; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    report.raw_consistent[ju] =
        std::fabs(report.raw[ju] - report.raw_oracle[ju]) /
            (1.0 + std::fabs(report.raw_oracle[ju])) <=
        moment_flag_tolerance(j);
    report.central_consistent[ju] =
        std::fabs(report.central[ju] - report.central_oracle[ju]) /
            (1.0 + std::fabs(report.central_oracle[ju])) <=
        moment_flag_tolerance(j);
  }
  report.phi = second_central_closed(params, x);
  report.psi = psi_local(params, x);
  return report;
}

namespace {

double round_up_2sig(double v) {
  if (v <= 0.0) return 0.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)) - 1.0);
  return std::ceil(v / mag) * mag;
}

}  // namespace

RemarkConstants fit_remark_constants(Lambda lambda, int p,
                                     const AlphaSpec& alpha_rule, double x_lo,
                                     double x_hi,
                                     const std::vector<int>& n_list,
                                     int grid_points) {
  if (n_list.size() < 4) {
    throw std::invalid_argument(
        "fit_remark_constants: need at least 4 values of n");
  }
  double max1 = 0.0, max2 = 0.0;
  int n_min = n_list.front();
  for (int n : n_list) {
    n_min = std::min(n_min, n);
    OperatorParams params{n, p, alpha_rule, lambda};
    params.validate_order(4);
    for (int g = 0; g < grid_points; ++g) {
      const double x =
          x_lo + (x_hi - x_lo) * static_cast<double>(g) /
                     static_cast<double>(grid_points - 1);
      const auto central = central_closed_array(params, x);
      const double weight2 = 1.0 + x * x;
      max1 = std::max(max1, n * central[2] / weight2);
      max2 = std::max(max2, n * central[4] / (weight2 * weight2));
    }
  }
  if (max1 > 1e6 || max2 > 1e6) {
    throw std::runtime_error(
        "fit_remark_constants: bound not observed (constants exceed 1e6)");
  }
  RemarkConstants rc;
  rc.A1 = round_up_2sig(max1);
  rc.A2 = round_up_2sig(max2);
  rc.n_min = n_min;
  rc.x_lo = x_lo;
  rc.x_hi = x_hi;
  return rc;
}

}  // namespace pedops

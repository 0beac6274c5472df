#include "pedops/operator_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pedops/combinatorics.hpp"

namespace pedops {

double OperatorParams::domain_sup() const {
  return finite_support() ? 1.0 : std::numeric_limits<double>::infinity();
}

bool OperatorParams::in_domain(double x) const {
  return x >= 0.0 && x <= domain_sup();
}

void OperatorParams::validate() const {
  if (n < 1) throw std::invalid_argument("OperatorParams: n must be >= 1");
  if (p < 0) throw std::invalid_argument("OperatorParams: p must be >= 0");
  const double a = alpha_value();
  if (a < 0.0) {
    throw std::invalid_argument("OperatorParams: alpha must be >= 0");
  }
  if (lambda == Lambda::zero && a >= 1.0) {
    throw std::invalid_argument(
        "OperatorParams: alpha must be < 1 for the series case");
  }
}

void OperatorParams::validate_order(int j) const {
  validate();
  if (lambda != Lambda::zero) return;
  const double a = alpha_value();
  if ((j >= 2 && a >= 0.5) || (j >= 3 && a >= 1.0 / 3.0) ||
      (j >= 4 && a >= 0.25)) {
    throw std::domain_error(
        "moment undefined for this alpha: order-" + std::to_string(j) +
        " denominators are not positive");
  }
}

std::optional<SpecialCase> special_case_from_name(const std::string& name) {
  if (name == "schurer_stancu" || name == "schurer-stancu")
    return SpecialCase::schurer_stancu;
  if (name == "stancu") return SpecialCase::stancu;
  if (name == "lupas") return SpecialCase::lupas;
  if (name == "bernstein_schurer" || name == "bernstein-schurer")
    return SpecialCase::bernstein_schurer;
  if (name == "bernstein") return SpecialCase::bernstein;
  if (name == "stancu_schurer" || name == "stancu-schurer")
    return SpecialCase::stancu_schurer;
  if (name == "baskakov_stancu" || name == "baskakov-stancu")
    return SpecialCase::baskakov_stancu;
  if (name == "baskakov_schurer" || name == "baskakov-schurer")
    return SpecialCase::baskakov_schurer;
  if (name == "baskakov") return SpecialCase::baskakov;
  return std::nullopt;
}

std::string special_case_name(SpecialCase kind) {
  switch (kind) {
    case SpecialCase::schurer_stancu: return "schurer_stancu";
    case SpecialCase::stancu: return "stancu";
    case SpecialCase::lupas: return "lupas";
    case SpecialCase::bernstein_schurer: return "bernstein_schurer";
    case SpecialCase::bernstein: return "bernstein";
    case SpecialCase::stancu_schurer: return "stancu_schurer";
    case SpecialCase::baskakov_stancu: return "baskakov_stancu";
    case SpecialCase::baskakov_schurer: return "baskakov_schurer";
    case SpecialCase::baskakov: return "baskakov";
  }
  return "?";
}

namespace {

bool is_schurer(SpecialCase kind) {
  return kind == SpecialCase::schurer_stancu ||
         kind == SpecialCase::bernstein_schurer ||
         kind == SpecialCase::stancu_schurer ||
         kind == SpecialCase::baskakov_schurer;
}

bool takes_alpha(SpecialCase kind) {
  return kind == SpecialCase::schurer_stancu || kind == SpecialCase::stancu ||
         kind == SpecialCase::stancu_schurer ||
         kind == SpecialCase::baskakov_stancu;
}

}  // namespace

OperatorParams special_case(SpecialCase kind, int n, std::optional<int> p,
                            std::optional<AlphaSpec> alpha) {
  if (n < 1) throw std::invalid_argument("special_case: n must be >= 1");
  if (is_schurer(kind)) {
    if (!p.has_value()) {
      throw std::invalid_argument("special_case: " + special_case_name(kind) +
                                  " requires p");
    }
  } else if (p.has_value()) {
    throw std::invalid_argument("special_case: p is only accepted for the "
                                "Schurer kinds");
  }
  if (takes_alpha(kind)) {
    if (!alpha.has_value()) {
      throw std::invalid_argument("special_case: " + special_case_name(kind) +
                                  " requires alpha");
    }
  } else if (alpha.has_value()) {
    throw std::invalid_argument("special_case: alpha is fixed for " +
                                special_case_name(kind));
  }

  OperatorParams params;
  params.n = n;
  params.p = p.value_or(0);
  switch (kind) {
    case SpecialCase::schurer_stancu:
    case SpecialCase::stancu:
      params.lambda = Lambda::minus_one;
      params.alpha = *alpha;
      break;
    case SpecialCase::lupas:
      params.lambda = Lambda::minus_one;
      params.alpha = AlphaSpec::rule_over_n();
      break;
    case SpecialCase::bernstein_schurer:
    case SpecialCase::bernstein:
      params.lambda = Lambda::minus_one;
      params.alpha = AlphaSpec::literal(0.0);
      break;
    case SpecialCase::stancu_schurer:
    case SpecialCase::baskakov_stancu:
      params.lambda = Lambda::zero;
      params.alpha = *alpha;
      break;
    case SpecialCase::baskakov_schurer:
    case SpecialCase::baskakov:
      params.lambda = Lambda::zero;
      params.alpha = AlphaSpec::literal(0.0);
      break;
  }
  params.validate();
  return params;
}

double weight(const OperatorParams& params, std::int64_t k, double x) {
  params.validate();
  if (!params.in_domain(x)) {
    throw std::domain_error("weight: x outside the operator domain");
  }
  if (k < 0) throw std::out_of_range("weight: k must be >= 0");
  if (params.finite_support() && k > params.support_end()) {
    throw std::out_of_range("weight: k beyond n+p for the finite case");
  }
  const int lam = params.lam();
  const double a = params.alpha_value();
  const std::int64_t np = params.n + params.p;
  const std::int64_t big_n = np + static_cast<std::int64_t>(lam + 1) * k;

  // zero short-circuit: every numerator factor that can vanish on the
  // domain boundary is checked before logs are taken
  for (std::int64_t i = 0; i < k; ++i) {
    if (x + static_cast<double>(i) * a == 0.0) return 0.0;
  }
  const std::int64_t second_len = np + static_cast<std::int64_t>(lam) * k;
  for (std::int64_t i = 0; i < second_len; ++i) {
    if (1.0 + lam * x + static_cast<double>(i) * a == 0.0) return 0.0;
  }

  double log_w = std::log(static_cast<double>(np) / static_cast<double>(big_n)) +
                 std::lgamma(static_cast<double>(big_n) + 1.0) -
                 std::lgamma(static_cast<double>(k) + 1.0) -
                 std::lgamma(static_cast<double>(big_n - k) + 1.0);
  for (std::int64_t i = 0; i < k; ++i) {
    log_w += std::log(x + static_cast<double>(i) * a);
  }
  for (std::int64_t i = 0; i < second_len; ++i) {
    log_w += std::log(1.0 + lam * x + static_cast<double>(i) * a);
  }
  for (std::int64_t i = 0; i < big_n; ++i) {
    log_w -= std::log(1.0 + (lam + 1) * x + static_cast<double>(i) * a);
  }
  return std::exp(log_w);
}

double weight_ratio(const OperatorParams& params, std::int64_t k, double x) {
  params.validate();
  if (!params.in_domain(x)) {
    throw std::domain_error("weight_ratio: x outside the operator domain");
  }
  if (k < 0) throw std::out_of_range("weight_ratio: k must be >= 0");
  const double a = params.alpha_value();
  const std::int64_t np = params.n + params.p;
  if (params.finite_support()) {
    if (k + 1 > np) {
      throw std::out_of_range("weight_ratio: k+1 beyond n+p");
    }
    const double den = (1.0 - x) + static_cast<double>(np - k - 1) * a;
    if (den < 1e-300) {
      throw std::domain_error("weight_ratio: ratio undefined at this k");
    }
    return static_cast<double>(np - k) * (x + static_cast<double>(k) * a) /
           (static_cast<double>(k + 1) * den);
  }
  const double den = (1.0 + x) + static_cast<double>(np + k) * a;
  return static_cast<double>(np + k) * (x + static_cast<double>(k) * a) /
         (static_cast<double>(k + 1) * den);
}

namespace detail {

ScaledReal ScaledReal::from_log(double log_value) {
  ScaledReal r;
  r.e = static_cast<std::int64_t>(std::floor(log_value * 1.4426950408889634));
  r.m = std::exp(log_value - static_cast<double>(r.e) * 0.6931471805599453);
  int de = 0;
  r.m = std::frexp(r.m, &de);
  r.e += de;
  return r;
}

void ScaledReal::mul(double factor) {
  m *= factor;
  if (m == 0.0) {
    e = 0;
    return;
  }
  int de = 0;
  m = std::frexp(m, &de);
  e += de;
}

double ScaledReal::to_double() const {
  if (m == 0.0 || e < -1073) return 0.0;
  if (e > 1023) return std::numeric_limits<double>::infinity();
  return std::ldexp(m, static_cast<int>(e));
}

double log_weight0(const OperatorParams& params, double x) {
  const double a = params.alpha_value();
  const int lam = params.lam();
  const std::int64_t np = params.n + params.p;
  double s = 0.0;
  for (std::int64_t i = 0; i < np; ++i) {
    s += std::log(1.0 + lam * x + static_cast<double>(i) * a) -
         std::log(1.0 + (lam + 1) * x + static_cast<double>(i) * a);
  }
  return s;
}

WeightSeries::WeightSeries(const OperatorParams& params, double x)
    : params_(params), x_(x) {
  params_.validate();
  if (!params_.in_domain(x)) {
    throw std::domain_error("WeightSeries: x outside the operator domain");
  }
  if (x == 0.0) {
    degenerate_ = true;
    degenerate_k_ = 0;
  } else if (params_.finite_support() && x == 1.0) {
    // all mass sits at k = n+p; earlier weights carry a zero factor
    degenerate_ = true;
    degenerate_k_ = params_.support_end();
  }
  if (degenerate_) {
    k_ = degenerate_k_;
    current_ = 1.0;
  } else {
    w_ = ScaledReal::from_log(log_weight0(params_, x));
    current_ = w_.to_double();
  }
}

void WeightSeries::advance() {
  if (done_) return;
  if (degenerate_) {
    done_ = true;
    current_ = 0.0;
    return;
  }
  if (params_.finite_support() && k_ == params_.support_end()) {
    done_ = true;
    current_ = 0.0;
    return;
  }
  w_.mul(weight_ratio(params_, k_, x_));
  ++k_;
  current_ = w_.to_double();
}

}  // namespace detail

TruncationResult truncation_index(const OperatorParams& params, double x,
                                  const TruncationPolicy& policy) {
  if (params.finite_support()) {
    return {params.support_end(), 0.0, true};
  }
  detail::WeightSeries series(params, x);
  detail::KahanSum mass;
  TruncationResult result;
  while (true) {
    mass.add(series.weight());
    result.k = series.k();
    result.tail_mass_deficit = 1.0 - mass.value();
    if (series.done() || result.tail_mass_deficit <= policy.tail_mass_epsilon) {
      result.tail_captured = true;
      return result;
    }
    if (series.k() >= policy.k_max) {
      result.tail_captured = false;
      return result;
    }
    series.advance();
  }
}

ApplyResult apply(const OperatorParams& params, const RealFunction& f,
                  double x, const TruncationPolicy& policy) {
  detail::WeightSeries series(params, x);
  detail::KahanSum sum;
  detail::KahanSum mass;
  ApplyResult result;
  const double inv_n = 1.0 / static_cast<double>(params.n);
  while (true) {
    const double w = series.weight();
    const double t = static_cast<double>(series.k()) * inv_n;
    if (w != 0.0) {
      double fv;
      try {
        fv = f(t);
      } catch (const std::exception& e) {
        throw std::runtime_error("apply: function evaluation failed at t=" +
                                 std::to_string(t) + ": " + e.what());
      }
      if (!std::isfinite(fv)) {
        throw std::runtime_error("apply: function not finite at t=" +
                                 std::to_string(t));
      }
      sum.add(w * fv);
      mass.add(w);
    }
    ++result.terms;
    const double deficit = 1.0 - mass.value();
    // finite sums run to the end: the deficit shortcut would trade an
    // exact sum for a tail_mass_epsilon-sized truncation error
    if (series.done() ||
        (!params.finite_support() && deficit <= policy.tail_mass_epsilon)) {
      result.value = sum.value();
      result.tail_mass_deficit = deficit;
      result.tail_captured = true;
      return result;
    }
    if (series.k() >= policy.k_max) {
      result.value = sum.value();
      result.tail_mass_deficit = deficit;
      result.tail_captured = false;
      return result;
    }
    series.advance();
  }
}

}  // namespace pedops

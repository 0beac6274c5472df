#ifndef PEDOPS_OPERATOR_CORE_HPP
#define PEDOPS_OPERATOR_CORE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace pedops {

enum class Lambda : int {
  minus_one = -1,  // finite sum on [0, 1]
  zero = 0,        // infinite series on [0, inf)
};

/// alpha is either a literal value or the rule q/n, resolved per n so
/// that rule-driven cases evaluate as a single division.
struct AlphaSpec {
  double numerator = 0.0;
  bool over_n = false;

  static AlphaSpec literal(double v) { return {v, false}; }
  static AlphaSpec rule_over_n(double q = 1.0) { return {q, true}; }

  double value(int n) const {
    return over_n ? numerator / static_cast<double>(n) : numerator;
  }
  bool is_zero() const { return numerator == 0.0; }
};

struct OperatorParams {
  int n = 1;
  int p = 0;
  AlphaSpec alpha;
  Lambda lambda = Lambda::minus_one;

  int lam() const { return static_cast<int>(lambda); }
  double alpha_value() const { return alpha.value(n); }
  bool finite_support() const { return lambda == Lambda::minus_one; }
  // last support index for lambda = -1
  std::int64_t support_end() const { return n + p; }
  double domain_sup() const;  // 1 for lambda=-1, +inf otherwise
  bool in_domain(double x) const;

  // Basic guards (n >= 1, p >= 0, alpha >= 0, alpha < 1 for lambda=0).
  void validate() const;
  // Additional guard for moment formulas of order j: the denominators
  // 1 - 2a, 1 - 3a, 1 - 4a must stay positive when lambda = 0.
  void validate_order(int j) const;
};

enum class SpecialCase {
  schurer_stancu,
  stancu,
  lupas,
  bernstein_schurer,
  bernstein,
  stancu_schurer,
  baskakov_stancu,
  baskakov_schurer,
  baskakov,
};

std::optional<SpecialCase> special_case_from_name(const std::string& name);
std::string special_case_name(SpecialCase kind);

// p is accepted exactly for the Schurer kinds, alpha exactly for the
// Stancu kinds (lupas fixes alpha = 1/n itself).
OperatorParams special_case(SpecialCase kind, int n,
                            std::optional<int> p = std::nullopt,
                            std::optional<AlphaSpec> alpha = std::nullopt);

struct TruncationPolicy {
  double tail_mass_epsilon = 1e-12;
  double weight_floor = 1e-16;
  std::int64_t k_max = 1'000'000;
};

struct TruncationResult {
  std::int64_t k = 0;           // last index included
  double tail_mass_deficit = 0; // 1 - cumulative mass at k
  bool tail_captured = true;
};

// Single basis weight; evaluated in log space with explicit
// short-circuit on zero factors.
double weight(const OperatorParams& params, std::int64_t k, double x);

// Consecutive-weight ratio w_{k+1}/w_k in simplified form:
//   lambda=-1: ((n+p-k) (x+k a)) / ((k+1) (1-x+(n+p-k-1) a))
//   lambda= 0: ((n+p+k) (x+k a)) / ((k+1) (1+x+(n+p+k) a))
double weight_ratio(const OperatorParams& params, std::int64_t k, double x);

TruncationResult truncation_index(const OperatorParams& params, double x,
                                  const TruncationPolicy& policy = {});

struct ApplyResult {
  double value = 0.0;
  double tail_mass_deficit = 0.0;
  std::int64_t terms = 0;
  bool tail_captured = true;
};

using RealFunction = std::function<double(double)>;

// L(f; x) = sum_k w_k(x) f(k/n) with compensated summation.
ApplyResult apply(const OperatorParams& params, const RealFunction& f,
                  double x, const TruncationPolicy& policy = {});

namespace detail {

// Weight iterated in (mantissa, binary exponent) form so the chain
// survives log-weights far below the double underflow threshold.
struct ScaledReal {
  double m = 0.0;
  std::int64_t e = 0;

  static ScaledReal from_log(double log_value);
  void mul(double factor);
  double to_double() const;
};

// Iterates w_0, w_1, ... at fixed x by the ratio recurrence.
// Degenerate point masses (x = 0, and x = 1 for lambda = -1) are
// emitted explicitly.
class WeightSeries {
 public:
  WeightSeries(const OperatorParams& params, double x);

  std::int64_t k() const { return k_; }
  double weight() const { return current_; }
  bool done() const { return done_; }
  void advance();

 private:
  const OperatorParams params_;
  const double x_;
  ScaledReal w_;
  double current_ = 0.0;
  std::int64_t k_ = 0;
  bool done_ = false;
  bool degenerate_ = false;
  std::int64_t degenerate_k_ = 0;
};

double log_weight0(const OperatorParams& params, double x);

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

}  // namespace detail

}  // namespace pedops

#endif

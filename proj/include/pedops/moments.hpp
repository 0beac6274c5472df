#ifndef PEDOPS_MOMENTS_HPP
#define PEDOPS_MOMENTS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "pedops/operator_core.hpp"

namespace pedops {

/// One summation pass: raw moments sum_k w_k (k/n)^j and central
/// moments sum_k w_k (k/n - x)^j for j = 0..4, compensated.
///
/// For the series case the loop runs past the mass target until the
/// high-order increments are negligible or follow a clean power-law
/// tail, whose analytic estimate is then added. Central tails are the
/// binomial transform of the raw ones, so the central/raw transform
/// identity survives the correction exactly.
struct OracleMoments {
  std::array<double, 5> raw{};
  std::array<double, 5> central{};
  double tail_mass_deficit = 0.0;
  std::int64_t terms = 0;
  bool tail_captured = true;
};

OracleMoments moment_oracle(const OperatorParams& params, double x,
                            const TruncationPolicy& policy = {});

double raw_moment_oracle(const OperatorParams& params, int j, double x,
                         const TruncationPolicy& policy = {});

// Closed-form raw moment, j = 0..4.
double raw_moment_closed(const OperatorParams& params, int j, double x);

struct FlaggedValue {
  double value = 0.0;
  double oracle = 0.0;
  double rel_error = 0.0;  // |value - oracle| / (1 + |oracle|)
  bool consistent = true;
};

// Raw moment by the Stirling-number expansion, evaluated as printed in
// the source derivation. Known to disagree with the summation oracle
// for the series case with alpha != 0 (the expansion's unit-argument
// factorial-power denominator picks up a spurious (1 + alpha) factor);
// the flag reports the verdict.
FlaggedValue raw_moment_stirling(const OperatorParams& params, int j, double x,
                                 const TruncationPolicy& policy = {});

// The expansion value alone, without the oracle comparison.
double raw_moment_stirling_value(const OperatorParams& params, int j, double x);

// raw[0..4] (raw[0] must be ~1) -> central moments of order 0..4 via
// the recursion V((t-x)^j) = V(t^j) - sum_{i<j} C(j,i) x^{j-i} V((t-x)^i).
std::array<double, 5> central_from_raw(const std::array<double, 5>& raw,
                                       double x);

// First central moment, x (p + n (lam+1) a) / (n (1 - (lam+1) a)).
// Matches the summation oracle for every parameter combination.
double first_central_closed(const OperatorParams& params, double x);

// The alternative printed form (p x + (lam+1) a) / (n (1 - (lam+1) a)).
// Disagrees with the oracle for the series case with alpha != 0; kept
// only for the discrepancy report.
double first_central_printed(const OperatorParams& params, double x);

// phi(x) = L((t-x)^2; x), closed form.
double second_central_closed(const OperatorParams& params, double x);

// psi(x) = phi(x) + (first central moment)^2.
double psi_local(const OperatorParams& params, double x);

// Closed central moment of order j = 1..4 with oracle verdict.
FlaggedValue central_moment_closed(const OperatorParams& params, int j,
                                   double x,
                                   const TruncationPolicy& policy = {});

struct MomentReport {
  OperatorParams params;
  double x = 0.0;
  std::array<double, 5> raw{};          // closed forms, j = 0..4
  std::array<double, 5> raw_oracle{};
  std::array<double, 5> central{};      // closed forms, order 0..4
  std::array<double, 5> central_oracle{};
  std::array<bool, 5> raw_consistent{true, true, true, true, true};
  std::array<bool, 5> central_consistent{true, true, true, true, true};
  double psi = 0.0;
  double phi = 0.0;
  double tail_mass_deficit = 0.0;
};

MomentReport moment_report(const OperatorParams& params, double x,
                           const TruncationPolicy& policy = {});

// Oracle-agreement tolerance used for consistency flags:
// 1e-8 relative for orders <= 2, 1e-6 for orders 3-4.
double moment_flag_tolerance(int j);

struct RemarkConstants {
  double A1 = 0.0;
  double A2 = 0.0;
  int n_min = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

// Family: lambda and p fixed, alpha given as a rule of n. Fits the
// smallest constants (rounded up to 2 significant figures) with
//   central2 <= A1 (1+x^2)/n   and   central4 <= A2 (1+x^2)^2/n
// over a 257-point grid of [x_lo, x_hi] for every n in n_list.
RemarkConstants fit_remark_constants(Lambda lambda, int p,
                                     const AlphaSpec& alpha_rule, double x_lo,
                                     double x_hi,
                                     const std::vector<int>& n_list,
                                     int grid_points = 257);

}  // namespace pedops

#endif

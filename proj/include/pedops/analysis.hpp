#ifndef PEDOPS_ANALYSIS_HPP
#define PEDOPS_ANALYSIS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pedops/moments.hpp"
#include "pedops/operator_core.hpp"

namespace pedops {

enum class ModulusKind { first_order, second_order, restricted_b, weighted };

/// Grid lower estimate of a sup-type modulus of continuity. Offsets h
/// run over lattice multiples up to delta plus the endpoint delta
/// itself, so nested h-sets keep the estimate monotone in delta for
/// the lattice part.
struct ModulusEstimate {
  ModulusKind kind = ModulusKind::first_order;
  double delta = 0.0;
  double value = 0.0;
  int grid_points = 0;
  double domain_cap = 0.0;
};

// first_order / restricted_b: sup |f(x+h)-f(x)|, 0 < h <= delta
// second_order: sup |f(x+2h)-2f(x+h)+f(x)|
// weighted: sup |f(x+h)-f(x)| / (1+(x+h)^2)
// all over x in [lo, hi] with the shifted points kept inside [lo, hi].
ModulusEstimate modulus(const RealFunction& f, ModulusKind kind, double delta,
                        double lo, double hi, int grid_n = 1024);

struct LipschitzClass {
  double beta = 1.0;
  double M = 0.0;
  double arg_x = 0.0;  // maximizing pair of the grid estimate
  double arg_y = 0.0;
};

// M = max over grid pairs (x != y, x + y > 0) of
// |f(y)-f(x)| (x+y)^{beta/2} / |y-x|^beta, a lower estimate of the
// seminorm. Values beyond 1e12 are rejected.
LipschitzClass estimate_lipschitz_M(const RealFunction& f, double beta,
                                    double lo, double hi, int grid_n = 257);

enum class TheoremId { local_thm1, lipschitz_L7, weighted_L10, rate_thm4 };

std::string theorem_name(TheoremId id);

struct BoundReport {
  TheoremId theorem_id = TheoremId::local_thm1;
  double x = 0.0;                 // point bounds
  double x_lo = 0.0, x_hi = 0.0;  // interval bounds
  double bound_value = 0.0;
  double measured_error = 0.0;
  std::vector<std::pair<std::string, double>> constants;
  double tail_mass_deficit = 0.0;
};

// Calibration of the absolute constant in the local bound: max over a
// midpoint grid of (measured error - first-modulus term) / (second-
// modulus term), clamped to [1, 10].
double calibrate_theorem1_C(const OperatorParams& params, const RealFunction& f,
                            double domain_cap = 50.0,
                            int calibration_points = 33, int modulus_grid = 1024,
                            const TruncationPolicy& policy = {});

// bound = w1(f, c1) + C w2(f, sqrt(psi)/2), c1 the first central
// moment and psi = phi + c1^2.
BoundReport theorem1_bound(const OperatorParams& params, const RealFunction& f,
                           double x, double calibrated_C,
                           double domain_cap = 50.0, int modulus_grid = 1024,
                           const TruncationPolicy& policy = {});

// bound = M (phi(x)/x)^{beta/2}; undefined at x = 0.
BoundReport lipschitz_bound(const OperatorParams& params, const RealFunction& f,
                            const LipschitzClass& lip, double x,
                            const TruncationPolicy& policy = {});

// bound = 4 M_f (1+b^2) Phi + 2 w_{b+1}(f, sqrt(Phi)) with
// Phi = sup_{[0,b]} phi; the measured error is the grid sup over [0,b].
BoundReport weighted_bound_L10(const OperatorParams& params,
                               const RealFunction& f, double b, double M_f,
                               int grid_n = 257, int modulus_grid = 1024,
                               const TruncationPolicy& policy = {});

struct KorovkinRow {
  int n = 0;
  std::array<double, 3> norm{};  // sup |L(t^i;x) - x^i| / (1+x^2)
};

std::vector<KorovkinRow> korovkin_check_L9(Lambda lambda, int p,
                                           const AlphaSpec& alpha_rule,
                                           const std::vector<int>& n_list,
                                           double domain_cap,
                                           int grid_n = 257);

// Verifies sup_x |Lf - f| / (1+x^2)^{5/2} <= K W(f, 1/sqrt(n)) with
// K = 2 (1 + A1 + sqrt(A1) + sqrt(A1 A2)).
BoundReport rate_bound_thm4(const OperatorParams& params, const RealFunction& f,
                            const RemarkConstants& remark, double domain_cap,
                            int grid_n = 257, int modulus_grid = 1024,
                            const TruncationPolicy& policy = {});

struct ConvergencePoint {
  double x = 0.0;
  std::vector<double> errors;  // one per n
  double slope = 0.0;          // log-log least squares
  bool slope_valid = false;
  int excluded = 0;  // points at the noise floor
};

struct ConvergenceTable {
  std::vector<int> n_list;
  std::vector<ConvergencePoint> points;
  double min_slope = 0.0;
  double median_slope = 0.0;
  bool any_slope = false;
};

ConvergenceTable convergence_experiment(Lambda lambda, int p,
                                        const AlphaSpec& alpha,
                                        const RealFunction& f,
                                        const std::vector<double>& x_grid,
                                        const std::vector<int>& n_list,
                                        const TruncationPolicy& policy = {});

}  // namespace pedops

#endif

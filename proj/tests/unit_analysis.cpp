#include <cmath>

#include "doctest.h"
#include "pedops/analysis.hpp"

using namespace pedops;

namespace {

OperatorParams make(int n, int p, double alpha, Lambda lambda) {
  return OperatorParams{n, p, AlphaSpec::literal(alpha), lambda};
}

const RealFunction kSquare = [](double t) { return t * t; };
const RealFunction kExpNeg = [](double t) { return std::exp(-t); };

}  // namespace

TEST_CASE("modulus closed examples") {
  const RealFunction constant = [](double) { return 2.0; };
  for (ModulusKind kind :
       {ModulusKind::first_order, ModulusKind::second_order,
        ModulusKind::restricted_b, ModulusKind::weighted}) {
    CHECK(modulus(constant, kind, 0.1, 0.0, 1.0).value == 0.0);
  }
  const RealFunction ident = [](double t) { return t; };
  CHECK(modulus(ident, ModulusKind::first_order, 0.1, 0.0, 1.0).value ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(modulus(kSquare, ModulusKind::second_order, 0.1, 0.0, 1.0).value ==
        doctest::Approx(0.02).epsilon(1e-12));
  // zero or negative delta yields an empty sup
  CHECK(modulus(kSquare, ModulusKind::first_order, 0.0, 0.0, 1.0).value == 0.0);
}

TEST_CASE("modulus is monotone in delta at grid level") {
  const RealFunction wobble = [](double t) { return std::sin(3.0 * t); };
  for (ModulusKind kind :
       {ModulusKind::first_order, ModulusKind::second_order,
        ModulusKind::weighted}) {
    double prev = 0.0;
    for (double d : {0.02, 0.05, 0.1, 0.2, 0.4}) {
      const double v = modulus(wobble, kind, d, 0.0, 1.0).value;
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("weighted modulus surrogate subadditivity") {
  const RealFunction f = [](double t) { return t * t / (1.0 + t); };
  const double delta = 0.05;
  const double base = modulus(f, ModulusKind::weighted, delta, 0.0, 5.0).value;
  const double grid_tol = 2.0 * (5.0 / 4096.0) * 2.0;  // spacing x slope cap
  for (int mu : {1, 2, 3}) {
    const double scaled =
        modulus(f, ModulusKind::weighted, mu * delta, 0.0, 5.0).value;
    CHECK(scaled <= (1.0 + mu) * base + grid_tol);
  }
}

TEST_CASE("lipschitz seminorm estimates") {
  const RealFunction constant = [](double) { return 3.0; };
  CHECK(estimate_lipschitz_M(constant, 1.0, 0.0, 1.0).M == 0.0);

  const RealFunction root = [](double t) { return std::sqrt(t); };
  const LipschitzClass lr = estimate_lipschitz_M(root, 1.0, 0.0, 1.0);
  CHECK(lr.M <= 1.0 + 1e-12);  // approaches 1 from below
  CHECK(lr.M >= 0.9);

  const RealFunction ident = [](double t) { return t; };
  const LipschitzClass li = estimate_lipschitz_M(ident, 1.0, 0.0, 1.0);
  CHECK(li.M <= std::sqrt(2.0) + 1e-12);
  CHECK(li.M >= 1.40);
  CHECK_THROWS(estimate_lipschitz_M(ident, 1.5, 0.0, 1.0));
}

TEST_CASE("local bound on the classical finite case") {
  const OperatorParams bern = make(10, 0, 0.0, Lambda::minus_one);
  const BoundReport r = theorem1_bound(bern, kSquare, 0.5, 2.0);
  CHECK(r.measured_error == doctest::Approx(0.025).epsilon(1e-10));
  // p=0 and alpha=0 make the first-modulus argument zero
  CHECK(r.constants[3].second == 0.0);  // omega1
  CHECK(r.constants[2].second == doctest::Approx(0.025));  // psi
  CHECK(r.measured_error <= r.bound_value);
}

TEST_CASE("calibrated constant dominates on the calibration range") {
  for (const OperatorParams& params :
       {make(10, 0, 0.0, Lambda::minus_one), make(10, 1, 0.05, Lambda::minus_one),
        make(10, 2, 0.05, Lambda::zero)}) {
    const double c = calibrate_theorem1_C(params, kSquare, 10.0);
    CHECK(c >= 1.0);
    CHECK(c <= 10.0);
    const double x_hi = params.finite_support() ? 1.0 : 5.0;
    for (int i = 0; i < 33; i += 2) {
      const double x = x_hi * (static_cast<double>(i) + 0.5) / 33.0;
      const BoundReport r = theorem1_bound(params, kSquare, x, c, 10.0);
      CHECK(r.measured_error <= r.bound_value * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("lipschitz bound at interior points") {
  const OperatorParams bern = make(64, 0, 0.0, Lambda::minus_one);
  const RealFunction root = [](double t) { return std::sqrt(t); };
  const LipschitzClass lip = estimate_lipschitz_M(root, 1.0, 0.0, 1.0);
  const BoundReport r = lipschitz_bound(bern, root, lip, 0.25);
  // phi = x(1-x)/n so the bound is M sqrt((1-x)/n)
  CHECK(r.bound_value ==
        doctest::Approx(lip.M * std::sqrt(0.75 / 64.0)).epsilon(1e-12));
  CHECK(r.measured_error <= r.bound_value);
  CHECK_THROWS(lipschitz_bound(bern, root, lip, 0.0));

  const OperatorParams bask = make(50, 0, 0.0, Lambda::zero);
  const LipschitzClass lip2 = estimate_lipschitz_M(root, 1.0, 0.0, 10.0);
  const BoundReport r2 = lipschitz_bound(bask, root, lip2, 1.0);
  CHECK(r2.measured_error <= r2.bound_value);
}

TEST_CASE("weighted interval bound") {
  const OperatorParams bask = make(100, 0, 0.0, Lambda::zero);
  const BoundReport r = weighted_bound_L10(bask, kSquare, 2.0, 1.0);
  CHECK(r.measured_error <= r.bound_value);
  CHECK(r.bound_value > 0.0);

  // quadrupling n cuts the first term by about four
  const OperatorParams bask4 = make(400, 0, 0.0, Lambda::zero);
  const BoundReport r4 = weighted_bound_L10(bask4, kSquare, 2.0, 1.0);
  const double phi_ratio = r.constants[2].second / r4.constants[2].second;
  CHECK(phi_ratio == doctest::Approx(4.0).epsilon(0.05));

  const RealFunction growing = [](double t) { return std::exp(t); };
  CHECK_THROWS(weighted_bound_L10(bask, growing, 2.0, 1.0));
}

TEST_CASE("korovkin weighted norms decay") {
  for (Lambda lambda : {Lambda::minus_one, Lambda::zero}) {
    const int p = lambda == Lambda::minus_one ? 2 : 0;
    const auto rows = korovkin_check_L9(lambda, p, AlphaSpec::rule_over_n(),
                                        {10, 40, 160}, 50.0);
    REQUIRE(rows.size() == 3);
    for (const KorovkinRow& row : rows) {
      CHECK(row.norm[0] <= 1e-14);
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      for (int j : {1, 2}) {
        CHECK(rows[i].norm[static_cast<std::size_t>(j)] /
                  rows[i + 1].norm[static_cast<std::size_t>(j)] >=
              1.8);
      }
    }
  }
}

TEST_CASE("rate bound with the proof constant") {
  RemarkConstants unit;
  unit.A1 = 1.0;
  unit.A2 = 1.0;
  const OperatorParams bask = make(50, 0, 0.0, Lambda::zero);
  const RealFunction f = [](double t) { return t * t / (1.0 + t); };
  const BoundReport r = rate_bound_thm4(bask, f, unit, 10.0);
  CHECK(r.constants[0].second == doctest::Approx(8.0));  // K for A1=A2=1
  CHECK(r.measured_error <= r.bound_value);

  const RemarkConstants fitted = fit_remark_constants(
      Lambda::zero, 0, AlphaSpec::rule_over_n(0.5), 0.0, 5.0,
      {50, 100, 200, 400});
  const OperatorParams stancu =
      OperatorParams{50, 0, AlphaSpec::rule_over_n(0.5), Lambda::zero};
  const BoundReport r2 = rate_bound_thm4(stancu, f, fitted, 10.0);
  CHECK(r2.measured_error <= r2.bound_value);
}

TEST_CASE("convergence slopes") {
  const std::vector<int> ns = {5, 10, 20, 40, 80};
  const ConvergenceTable bern = convergence_experiment(
      Lambda::minus_one, 0, AlphaSpec::literal(0.0), kSquare, {0.5}, ns);
  REQUIRE(bern.points.size() == 1);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    CHECK(std::fabs(bern.points[0].errors[i] - 0.25 / ns[i]) <= 1e-12);
  }
  CHECK(bern.points[0].slope == doctest::Approx(-1.0).epsilon(0.01));

  // linear functions are reproduced exactly: all points at the floor
  const RealFunction ident = [](double t) { return t; };
  const ConvergenceTable lin = convergence_experiment(
      Lambda::minus_one, 0, AlphaSpec::literal(0.0), ident, {0.3}, ns);
  CHECK_FALSE(lin.points[0].slope_valid);
  CHECK(lin.points[0].excluded == static_cast<int>(ns.size()));

  const ConvergenceTable bask = convergence_experiment(
      Lambda::zero, 0, AlphaSpec::rule_over_n(), kExpNeg, {0.5, 1.0, 2.0},
      {10, 20, 40, 80});
  CHECK(bask.any_slope);
  CHECK(bask.median_slope <= -0.9);
}

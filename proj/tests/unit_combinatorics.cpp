#include <cmath>

#include "doctest.h"
#include "pedops/combinatorics.hpp"

using namespace pedops;

TEST_CASE("stirling2 base cases and recurrence values") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(3, 5) == 0);
  CHECK(stirling2(1, 0) == 0);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(4, 3) == 6);
  CHECK(stirling2(4, 4) == 1);
  CHECK(stirling2(5, 2) == 15);
  CHECK(stirling2(10, 5) == 42525);
}

TEST_CASE("stirling table rejects orders beyond the 64-bit range") {
  CHECK_THROWS(StirlingTable(StirlingTable::kMaxSupportedOrder + 1));
  CHECK_THROWS(stirling2(StirlingTable::kMaxSupportedOrder + 1, 2));
}

TEST_CASE("stirling table regeneration is idempotent") {
  const StirlingTable a(12);
  const StirlingTable b(12);
  CHECK(a.entries() == b.entries());
}

TEST_CASE("factorial_power examples") {
  CHECK(factorial_power(0.7, 0, -0.1) == 1.0);
  CHECK(factorial_power(0.5, 2, -0.1) == doctest::Approx(0.30).epsilon(1e-14));
  CHECK(factorial_power(2.0, 3, 0.0) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("falling and rising factorial examples") {
  CHECK(falling_factorial(3.7, 0) == 1.0);
  CHECK(falling_factorial(5.0, 2) == 20.0);
  CHECK(rising_factorial(3.0, 2) == 12.0);
}

TEST_CASE("factorial_power with unit increments matches the factorials") {
  const double ys[] = {0.0, 0.5, 1.0, 2.5, 7.0, 12.25};
  for (double y : ys) {
    for (int n = 0; n <= 6; ++n) {
      CHECK(factorial_power(y, n, 1.0) == falling_factorial(y, n));
      CHECK(factorial_power(y, n, -1.0) == rising_factorial(y, n));
    }
  }
}

TEST_CASE("monomials expand over falling factorials with stirling weights") {
  for (int j = 0; j <= 12; ++j) {
    for (int s = 0; s < 20; ++s) {
      const double x = -3.0 + 7.0 * s / 19.0;
      double sum = 0.0, magnitude = 0.0;
      for (int i = 0; i <= j; ++i) {
        const double term =
            static_cast<double>(stirling2(j, i)) * falling_factorial(x, i);
        sum += term;
        magnitude += std::fabs(term);
      }
      const double ref = std::pow(x, j);
      // the terms alternate in sign for x < 0, so the achievable
      // accuracy scales with the summand magnitude, not the result
      CHECK(std::fabs(sum - ref) <= 1e-13 * (1.0 + magnitude));
    }
  }
}

TEST_CASE("log-space product path agrees with the naive one") {
  // n > 64 with all-positive factors switches internally
  const double direct = factorial_power(100.0, 65, -0.5);
  double naive = 1.0;
  for (int i = 0; i < 65; ++i) naive *= 100.0 + 0.5 * i;
  CHECK(direct == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(10, 10) == 1.0);
  CHECK(binomial(4, 7) == 0.0);
  CHECK(binomial(52, 5) == doctest::Approx(2598960.0).epsilon(1e-12));
}

#ifndef PEDOPS_COMBINATORICS_HPP
#define PEDOPS_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

namespace pedops {

/// Triangular table of Stirling numbers of the second kind, stored as
/// exact 64-bit integers. Immutable after construction; safe for
/// concurrent reads.
class StirlingTable {
 public:
  static constexpr int kMaxSupportedOrder = 20;

  explicit StirlingTable(int max_order);

  int max_order() const { return max_order_; }

  // S(j, i); returns 0 for j < i. Both arguments must be in
  // [0, max_order].
  std::uint64_t at(int j, int i) const;

  const std::vector<std::vector<std::uint64_t>>& entries() const {
    return rows_;
  }

 private:
  int max_order_;
  std::vector<std::vector<std::uint64_t>> rows_;  // rows_[j][i], i <= j
};

// S(j, i) via a shared table of order kMaxSupportedOrder.
std::uint64_t stirling2(int j, int i);

// prod_{i=0}^{n-1} (t - i*h); n = 0 gives 1. Switches to a log-space
// product when n > 64 and every factor is positive.
double factorial_power(double t, int n, double h);

// (y)_n = y(y-1)...(y-n+1)
double falling_factorial(double y, int n);

// (y)^(n) = y(y+1)...(y+n-1)
double rising_factorial(double y, int n);

// C(n, k) as a double; n may be any nonnegative integer.
double binomial(std::int64_t n, std::int64_t k);

}  // namespace pedops

#endif

#include "pedops/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace pedops {

StirlingTable::StirlingTable(int max_order) : max_order_(max_order) {
  if (max_order < 0) {
    throw std::invalid_argument("StirlingTable: max_order must be >= 0");
  }
  if (max_order > kMaxSupportedOrder) {
    // S(j, i) no longer fits in 64 bits much past this point.
    throw std::invalid_argument(
        "StirlingTable: max_order exceeds supported limit of 20");
  }
  rows_.resize(static_cast<std::size_t>(max_order) + 1);
  rows_[0] = {1};
  for (int j = 1; j <= max_order; ++j) {
    auto& row = rows_[static_cast<std::size_t>(j)];
    const auto& prev = rows_[static_cast<std::size_t>(j) - 1];
    row.assign(static_cast<std::size_t>(j) + 1, 0);
    row[0] = 0;
    for (int i = 1; i < j; ++i) {
      row[static_cast<std::size_t>(i)] =
          static_cast<std::uint64_t>(i) * prev[static_cast<std::size_t>(i)] +
          prev[static_cast<std::size_t>(i) - 1];
    }
    row[static_cast<std::size_t>(j)] = 1;
  }
}

std::uint64_t StirlingTable::at(int j, int i) const {
  if (j < 0 || i < 0) {
    throw std::invalid_argument("StirlingTable::at: negative index");
  }
  if (j > max_order_ || i > max_order_) {
    throw std::out_of_range("StirlingTable::at: index beyond max_order");
  }
  if (j < i) return 0;
  return rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
}

std::uint64_t stirling2(int j, int i) {
  static const StirlingTable table(StirlingTable::kMaxSupportedOrder);
  return table.at(j, i);
}

double factorial_power(double t, int n, double h) {
  if (n < 0) {
    throw std::invalid_argument("factorial_power: n must be >= 0");
  }
  if (n > 64) {
    bool all_positive = true;
    for (int i = 0; i < n; ++i) {
      if (t - i * h <= 0.0) {
        all_positive = false;
        break;
      }
    }
    if (all_positive) {
      double log_sum = 0.0;
      for (int i = 0; i < n; ++i) log_sum += std::log(t - i * h);
      return std::exp(log_sum);
    }
  }
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= t - i * h;
  return prod;
}

double falling_factorial(double y, int n) { return factorial_power(y, n, 1.0); }

double rising_factorial(double y, int n) { return factorial_power(y, n, -1.0); }

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (k < 30 && n < 60) {
    double r = 1.0;
    for (std::int64_t i = 0; i < k; ++i) {
      r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return r;
  }
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                  std::lgamma(static_cast<double>(k) + 1.0) -
                  std::lgamma(static_cast<double>(n - k) + 1.0));
}

}  // namespace pedops

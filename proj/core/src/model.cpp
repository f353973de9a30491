#include "slt/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "slt/errors.hpp"

namespace slt {

void ModelParams::validate() const {
  if (!std::isfinite(T) || T <= 0.0) {
    throw DomainError("time horizon T must be finite and > 0, got " + std::to_string(T));
  }
  if (!std::isfinite(eps) || eps < 0.0) {
    throw DomainError("mollifier width eps must be finite and >= 0, got " + std::to_string(eps));
  }
}

namespace {

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
  std::array<std::uint64_t, 21> table{};
  table[0] = 1;
  for (std::size_t i = 1; i < table.size(); ++i) {
    table[i] = table[i - 1] * i;
  }
  return table;
}();

}  // namespace

std::uint64_t factorial_exact(int n) {
  if (n < 0 || n > 20) {
    throw DomainError("exact factorial is limited to 0 <= n <= 20, got " + std::to_string(n));
  }
  return kFactorials[static_cast<std::size_t>(n)];
}

double factorial(int n) {
  if (n < 0) {
    throw DomainError("factorial of negative integer " + std::to_string(n));
  }
  if (n <= 20) {
    return static_cast<double>(kFactorials[static_cast<std::size_t>(n)]);
  }
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0));
}

std::uint64_t binomial_exact(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > 62) {
    throw DomainError("binomial_exact requires 0 <= k <= n <= 62");
  }
  k = std::min(k, n - k);
  // acc * (n-k+i) / i is an integer; cancel gcd(acc, i) first so the
  // product stays within 64 bits.
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(acc, static_cast<std::uint64_t>(i));
    acc = (acc / g) * (static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g));
  }
  return acc;
}

double MultiIndex::factorial() const {
  if (n1 < 0 || n2 < 0) {
    throw DomainError("multi-index components must be nonnegative");
  }
  return slt::factorial(n1) * slt::factorial(n2);
}

KernelPoint::KernelPoint(std::span<const double> times) : times_(times.begin(), times.end()) {
  if (times_.empty()) {
    throw DomainError("kernel point needs at least one time argument");
  }
  const auto [lo, hi] = std::minmax_element(times_.begin(), times_.end());
  u_ = *lo;
  v_ = *hi;
}

}  // namespace slt

#include "slt/series_tail.hpp"

#include <gsl/gsl_sf_dilog.h>

#include <cmath>
#include <numbers>
#include <string>

#include "slt/errors.hpp"

namespace slt {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

double level_weight(int n) {
  if (n < 2) {
    throw DomainError("level_weight needs n >= 2, got " + std::to_string(n));
  }
  const double dn = n;
  const double denom = 2.0 * std::numbers::pi * dn * (dn - 1.0);
  return 2.0 * dn * (2.0 * dn - 1.0) / (denom * denom);
}

double dilog(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("dilog is only provided on [0, 1]");
  }
  return gsl_sf_dilog(x);
}

double weighted_power_tail(double x, int N) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("weighted_power_tail requires 0 <= x <= 1");
  }
  if (N < 1) {
    throw DomainError("weighted_power_tail requires N >= 1");
  }
  if (x == 0.0) {
    return 0.0;
  }
  if (x < 0.5) {
    double power = std::pow(x, N);  // x^{n-1} at n = N + 1
    double sum = 0.0;
    for (int n = N + 1;; ++n) {
      const double term = level_weight(n) * power;
      sum += term;
      if (term <= 1e-18 * sum) {
        break;
      }
      power *= x;
    }
    return sum;
  }
  const double one_minus = 1.0 - x;
  const double log_part = one_minus == 0.0 ? 0.0 : one_minus * std::log(one_minus) / x;
  double full = (log_part + 1.0 + dilog(x)) / (2.0 * kPi2);
  double power = x;  // x^{n-1}
  for (int n = 2; n <= N; ++n) {
    full -= level_weight(n) * power;
    power *= x;
  }
  return full;
}

}  // namespace slt

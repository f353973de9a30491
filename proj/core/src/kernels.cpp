#include "slt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slt/errors.hpp"

namespace slt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool inside(double t, double T) { return t >= 0.0 && t <= T; }

void check_level(int n) {
  if (n < 2) {
    throw DomainError("level n must be >= 2, got " + std::to_string(n));
  }
}

}  // namespace

double inverse_power(double x, int m) {
  if (m <= 7) {
    double p = 1.0;
    for (int i = 0; i < m; ++i) {
      p *= x;
    }
    return 1.0 / p;
  }
  return std::exp(-static_cast<double>(m) * std::log(x));
}

double shifted_power_difference(double x, double eps, int m) {
  if (eps == 0.0) {
    return 0.0;
  }
  return inverse_power(x, m) * -std::expm1(-static_cast<double>(m) * std::log1p(eps / x));
}

double k_epsilon(int n, double u, double v, const ModelParams& params) {
  check_level(n);
  params.validate();
  const double T = params.T;
  const double eps = params.eps;
  if (eps <= 0.0) {
    throw DomainError("k_epsilon requires eps > 0");
  }
  if (u < 0.0 || u > v || v > T) {
    throw DomainError("k_epsilon requires 0 <= u <= v <= T");
  }
  if (v == u) {
    throw SingularInput("K_eps diverges on the diagonal v == u");
  }
  const int m = n - 1;
  // v == 0 forces u == v above; v > 0 and T - u >= v - u > 0 here.
  // Grouped so that u == 0 and v == T cancel exactly, whatever the magnitudes.
  return (shifted_power_difference(T, eps, m) - shifted_power_difference(T - u, eps, m)) -
         (shifted_power_difference(v, eps, m) - shifted_power_difference(v - u, eps, m));
}

double kernel_bracket(int n, double u, double v, const ModelParams& params) {
  check_level(n);
  const double T = params.T;
  const double eps = params.eps;
  if (eps == 0.0 && v == u) {
    throw SingularInput("renormalized kernel diverges on the diagonal v == u");
  }
  const int m = n - 1;
  return (inverse_power(T + eps, m) - inverse_power(T - u + eps, m)) -
         (inverse_power(v + eps, m) - inverse_power(v - u + eps, m));
}

double kernel_prefactor(const MultiIndex& idx) {
  const int n = idx.total();
  check_level(n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::ldexp(1.0, -n) /
         (kTwoPi * static_cast<double>(n) * static_cast<double>(n - 1) * idx.factorial());
}

double kernel_f2n(const MultiIndex& idx, const KernelPoint& point, const ModelParams& params) {
  params.validate();
  const int n = idx.total();
  check_level(n);
  if (idx.n1 < 0 || idx.n2 < 0) {
    throw DomainError("multi-index components must be nonnegative");
  }
  if (point.size() != static_cast<std::size_t>(2 * n)) {
    throw DomainError("level-" + std::to_string(2 * n) + " kernel needs " + std::to_string(2 * n) +
                      " times, got " + std::to_string(point.size()));
  }
  if (!inside(point.u(), params.T) || !inside(point.v(), params.T)) {
    return 0.0;
  }
  return kernel_prefactor(idx) * kernel_bracket(n, point.u(), point.v(), params);
}

double kernel_f2(std::span<const double, 2> times, const ModelParams& params) {
  params.validate();
  const double T = params.T;
  const double eps = params.eps;
  const double u = std::min(times[0], times[1]);
  const double v = std::max(times[0], times[1]);
  if (!inside(u, T) || !inside(v, T)) {
    return 0.0;
  }
  if (eps == 0.0 && u == v) {
    throw SingularInput("renormalized level-one kernel diverges on the diagonal u1 == u2");
  }
  // ln of the ratio keeps the u = 0 cancellation exact.
  const double ratio = ((v + eps) * (T - u + eps)) / ((v - u + eps) * (T + eps));
  return -std::log(ratio) / (2.0 * kTwoPi);
}

double mean_l_eps(double T, double eps) {
  if (!std::isfinite(T) || T < 0.0) {
    throw DomainError("mean_l_eps requires finite T >= 0");
  }
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw DomainError("E[L_eps] is infinite for eps == 0; eps must be > 0");
  }
  const double x = T / eps;
  // (T+eps) ln(1 + T/eps) - T = eps * [(1+x) log1p(x) - x]
  double g = 0.0;
  if (x < 0.1) {
    // (1+x) log1p(x) - x = sum_{k>=2} (-1)^k x^k / (k (k-1))
    double term = x;
    for (int k = 2; k < 40; ++k) {
      term *= -x;
      const double c = -term / (static_cast<double>(k) * (k - 1));
      g += c;
      if (std::abs(c) < 1e-18 * std::abs(g)) {
        break;
      }
    }
  } else {
    g = (1.0 + x) * std::log1p(x) - x;
  }
  return eps * g / kTwoPi;
}

double mean_l_eps(const ModelParams& params) { return mean_l_eps(params.T, params.eps); }

}  // namespace slt

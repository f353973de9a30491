#include "slt/fock_norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "slt/bounds.hpp"
#include "slt/errors.hpp"
#include "slt/model.hpp"
#include "slt/series_tail.hpp"

namespace slt {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Level one carries 8 * (1/4pi)^2: multi-indices (1,0) and (0,1), Fock
// weight 2!0! = 2 each, and a factor 2 for folding [0,T]^2 onto u < v.
constexpr double kLevelOneWeight = 1.0 / (2.0 * kPi2);

// Rate used for the Hoelder truncation bound.
constexpr double kTailAlpha = 0.9;

void check_n_max(int n_max) {
  if (n_max < 1) {
    throw DomainError("n_max must be >= 1, got " + std::to_string(n_max));
  }
}

// (tau/x)^m (1 - (x/(x+eps))^m), the tau-scaled x^{-m} - (x+eps)^{-m}.
double scaled_difference(double tau, double x, double eps, int m) {
  const double damp = -std::expm1(-static_cast<double>(m) * std::log1p(eps / x));
  if (x == tau) {
    return damp;
  }
  return std::pow(tau / x, m) * damp;
}

// Ratios r_j and signs s_j with tau^{n-1} K_n = sum_j s_j r_j^{n-1}.
struct RatioSet {
  std::array<double, 8> r{};
  std::array<double, 8> s{};
  std::size_t size = 0;

  void push(double sign, double ratio) {
    s[size] = sign;
    r[size] = ratio;
    ++size;
  }
};

RatioSet diff_ratios(double u, double v, const ModelParams& p) {
  const double tau = v - u;
  const double T = p.T;
  const double eps = p.eps;
  RatioSet set;
  set.push(1.0, 1.0);
  if (tau == 0.0) {
    return set;
  }
  set.push(1.0, tau / T);
  set.push(-1.0, tau / (T + eps));
  set.push(-1.0, tau / (T - u));
  set.push(1.0, tau / (T - u + eps));
  set.push(-1.0, tau / v);
  set.push(1.0, tau / (v + eps));
  set.push(-1.0, tau / (tau + eps));
  return set;
}

RatioSet norm_ratios(double u, double v, const ModelParams& p) {
  const double tau = v - u;
  const double T = p.T;
  const double eps = p.eps;
  RatioSet set;
  if (tau == 0.0) {
    if (eps == 0.0) {
      set.push(1.0, 1.0);
    }
    return set;
  }
  set.push(1.0, tau / (T + eps));
  set.push(-1.0, tau / (T - u + eps));
  set.push(-1.0, tau / (v + eps));
  set.push(1.0, tau / (tau + eps));
  return set;
}

// sum_{j,k} s_j s_k Phi_N(r_j r_k)
double resummed_square(const RatioSet& set, int N) {
  double sum = 0.0;
  for (std::size_t j = 0; j < set.size; ++j) {
    sum += weighted_power_tail(set.r[j] * set.r[j], N);
    for (std::size_t k = j + 1; k < set.size; ++k) {
      sum += 2.0 * set.s[j] * set.s[k] * weighted_power_tail(set.r[j] * set.r[k], N);
    }
  }
  return sum;
}

ChaosLevelResult level_from(int n, const QuadratureResult& q) {
  // Squared integrands: a negative estimate can only be rounding noise.
  return ChaosLevelResult{n, std::max(q.value, 0.0), q};
}

ChaosLevelResult exact_zero(int n) { return ChaosLevelResult{n, 0.0, QuadratureResult{0.0, 0.0, 0, true}}; }

double sum_levels(const std::vector<ChaosLevelResult>& levels) {
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& l : levels) {
    const double t = sum + l.value;
    comp += (std::abs(sum) >= std::abs(l.value)) ? (sum - t) + l.value : (l.value - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

namespace integrands {

double level_one_diff(double u, double v, const ModelParams& params) {
  const double tau = v - u;
  if (tau == 0.0) {
    throw SingularInput("level-one difference kernel diverges on v == u");
  }
  const double eps = params.eps;
  const double T = params.T;
  auto h = [eps](double x) { return std::log1p(eps / x); };
  const double bracket = (h(T) - h(T - u)) - (h(v) - h(tau));
  return kLevelOneWeight * bracket * bracket;
}

double level_one_norm(double u, double v, const ModelParams& params) {
  const double tau = v - u;
  const double eps = params.eps;
  const double T = params.T;
  if (eps == 0.0 && tau == 0.0) {
    throw SingularInput("level-one kernel of L_c diverges on v == u");
  }
  auto l = [eps](double x) { return std::log(x + eps); };
  const double bracket = (l(T) - l(T - u)) - (l(v) - l(tau));
  return kLevelOneWeight * bracket * bracket;
}

double level_diff(int n, double u, double v, const ModelParams& params) {
  const int m = n - 1;
  const double tau = v - u;
  const double T = params.T;
  const double eps = params.eps;
  if (tau == 0.0) {
    // tau^{n-1} K_n -> 1 on the diagonal.
    return level_weight(n);
  }
  const double x = (scaled_difference(tau, T, eps, m) - scaled_difference(tau, T - u, eps, m)) -
                   (scaled_difference(tau, v, eps, m) - scaled_difference(tau, tau, eps, m));
  return level_weight(n) * x * x;
}

double level_norm(int n, double u, double v, const ModelParams& params) {
  const int m = n - 1;
  const double tau = v - u;
  const double T = params.T;
  const double eps = params.eps;
  if (tau == 0.0) {
    return eps == 0.0 ? level_weight(n) : 0.0;
  }
  auto e = [&](double x) { return std::pow(tau / (x + eps), m); };
  const double x = (e(T) - e(T - u)) - (e(v) - e(tau));
  return level_weight(n) * x * x;
}

double diff_tail(int N, double u, double v, const ModelParams& params) {
  return resummed_square(diff_ratios(u, v, params), N);
}

double norm_tail(int N, double u, double v, const ModelParams& params) {
  return resummed_square(norm_ratios(u, v, params), N);
}

}  // namespace integrands

std::uint64_t combinatorial_weight(int n) {
  if (n < 0 || n > 30) {
    throw DomainError("combinatorial_weight is exact only for 0 <= n <= 30, got " +
                      std::to_string(n));
  }
  std::uint64_t sum = 0;
  for (int k = 0; k <= n; ++k) {
    sum += binomial_exact(2 * k, k) * binomial_exact(2 * (n - k), n - k);
  }
  return sum;
}

ChaosLevelResult level_diff_norm_sq(int n, const ModelParams& params, const QuadratureConfig& cfg) {
  params.validate();
  if (n < 2) {
    throw DomainError("level_diff_norm_sq needs n >= 2; use level_one_diff_norm_sq for n = 1");
  }
  if (params.eps == 0.0) {
    return exact_zero(n);
  }
  const auto q = integrate_triangle(
      [&](double u, double v) { return integrands::level_diff(n, u, v, params); }, params.T, cfg);
  return level_from(n, q);
}

ChaosLevelResult level_one_diff_norm_sq(const ModelParams& params, const QuadratureConfig& cfg) {
  params.validate();
  if (params.eps == 0.0) {
    return exact_zero(1);
  }
  const auto q = integrate_triangle(
      [&](double u, double v) { return integrands::level_one_diff(u, v, params); }, params.T, cfg);
  return level_from(1, q);
}

ChaosLevelResult level_norm_sq(int n, const ModelParams& params, const QuadratureConfig& cfg) {
  params.validate();
  if (n < 1) {
    throw DomainError("level_norm_sq needs n >= 1");
  }
  const auto q = integrate_triangle(
      [&](double u, double v) {
        return n == 1 ? integrands::level_one_norm(u, v, params)
                      : integrands::level_norm(n, u, v, params);
      },
      params.T, cfg);
  return level_from(n, q);
}

SeriesResult total_diff_norm_sq(const ModelParams& params, int n_max, const QuadratureConfig& cfg) {
  params.validate();
  if (n_max < 2) {
    throw DomainError("total_diff_norm_sq needs n_max >= 2, got " + std::to_string(n_max));
  }
  SeriesResult out;
  out.truncation_level = n_max;
  out.levels.push_back(level_one_diff_norm_sq(params, cfg));
  for (int n = 2; n <= n_max; ++n) {
    out.levels.push_back(level_diff_norm_sq(n, params, cfg));
  }
  out.partial_sum = sum_levels(out.levels);
  if (params.eps == 0.0) {
    out.tail_quad = QuadratureResult{0.0, 0.0, 0, true};
    out.total = out.partial_sum;
    return out;
  }
  out.tail_quad = integrate_triangle(
      [&](double u, double v) { return integrands::diff_tail(n_max, u, v, params); }, params.T,
      cfg);
  out.tail = std::max(out.tail_quad.value, 0.0);
  out.tail_bound = level_tail_bound(params, kTailAlpha, n_max);
  out.total = out.partial_sum + out.tail;
  return out;
}

SeriesResult total_norm_sq(const ModelParams& params, int n_max, const QuadratureConfig& cfg) {
  params.validate();
  check_n_max(n_max);
  SeriesResult out;
  out.truncation_level = n_max;
  for (int n = 1; n <= n_max; ++n) {
    out.levels.push_back(level_norm_sq(n, params, cfg));
  }
  out.partial_sum = sum_levels(out.levels);
  out.tail_quad = integrate_triangle(
      [&](double u, double v) { return integrands::norm_tail(n_max, u, v, params); }, params.T,
      cfg);
  out.tail = std::max(out.tail_quad.value, 0.0);
  const double rho = params.T / (params.T + params.eps);
  out.tail_bound = 8.0 * params.T * params.T * weighted_power_tail(rho * rho, n_max);
  out.total = out.partial_sum + out.tail;
  return out;
}

bool SeriesResult::converged() const {
  for (const auto& l : levels) {
    if (!l.quad.converged) {
      return false;
    }
  }
  return tail_quad.converged;
}

double SeriesResult::error_estimate() const {
  double e = tail_quad.abs_error_estimate;
  for (const auto& l : levels) {
    e += l.quad.abs_error_estimate;
  }
  return e;
}

}  // namespace slt

#pragma once

#include <cstdint>
#include <vector>

#include "slt/model.hpp"
#include "slt/quadrature.hpp"

namespace slt {

/// Weighted contribution of one total chaos level n, i.e. the sum over all
/// multi-indices (n1, n2) with n1 + n2 = n of (2n)! ||F_{2n}||^2.
struct ChaosLevelResult {
  int n = 0;
  double value = 0.0;
  QuadratureResult quad;
};

/// A chaos series evaluated level by level up to `truncation_level`, with
/// the remainder over all higher levels resummed pointwise and integrated.
///
/// total = partial_sum + tail, where partial_sum is the sum of level values.
/// tail_bound is an analytic upper bound on the same remainder.
struct SeriesResult {
  double total = 0.0;
  double partial_sum = 0.0;
  double tail = 0.0;
  QuadratureResult tail_quad;
  double tail_bound = 0.0;
  int truncation_level = 0;
  std::vector<ChaosLevelResult> levels;

  [[nodiscard]] bool converged() const;
  /// Sum of the reported quadrature error estimates.
  [[nodiscard]] double error_estimate() const;
};

/// c_n = sum_{k=0}^{n} C(2k, k) C(2n-2k, n-k), the number of ways the (2n)!
/// Fock weights of the multi-indices at total level n add up once the
/// common (n1! n2!)^{-2} of the kernel is absorbed. Exact for 0 <= n <= 30.
std::uint64_t combinatorial_weight(int n);

/// Level n >= 2 of ||L_c - L_{eps,c}||^2 through the reduction of the
/// 2n-dimensional kernel integral to the triangle 0 <= u <= v <= T:
///   c_n (n(n-1) 2pi 2^n)^{-2} 2n(2n-1) int int (v-u)^{2n-2} K_eps^2 du dv.
/// eps == 0 gives exactly 0.
ChaosLevelResult level_diff_norm_sq(int n, const ModelParams& params, const QuadratureConfig& cfg);

/// Level one of ||L_c - L_{eps,c}||^2.
ChaosLevelResult level_one_diff_norm_sq(const ModelParams& params, const QuadratureConfig& cfg);

/// Level n >= 1 of ||L_{eps,c}||^2 (eps == 0: of ||L_c||^2).
ChaosLevelResult level_norm_sq(int n, const ModelParams& params, const QuadratureConfig& cfg);

/// ||L_{eps,c} - L_c||^2: levels 1..n_max explicitly, the rest resummed.
/// tail_bound is the Hoelder bound at alpha = 0.9 summed over n > n_max.
/// Throws DomainError for n_max < 2.
SeriesResult total_diff_norm_sq(const ModelParams& params, int n_max, const QuadratureConfig& cfg);

/// ||L_{eps,c}||^2 = Var(L_eps): levels 1..n_max explicitly, the rest
/// resummed. tail_bound = 8 T^2 Phi_{n_max}((T/(T+eps))^2).
SeriesResult total_norm_sq(const ModelParams& params, int n_max, const QuadratureConfig& cfg);

namespace integrands {

// Pointwise integrands over the triangle, already carrying the level
// weights, so that each level value is their plain integral.

double level_one_diff(double u, double v, const ModelParams& params);
double level_one_norm(double u, double v, const ModelParams& params);
double level_diff(int n, double u, double v, const ModelParams& params);
double level_norm(int n, double u, double v, const ModelParams& params);
/// sum_{n > N} of level_diff(n, u, v), in closed form.
double diff_tail(int N, double u, double v, const ModelParams& params);
/// sum_{n > N} of level_norm(n, u, v), in closed form.
double norm_tail(int N, double u, double v, const ModelParams& params);

}  // namespace integrands

}  // namespace slt

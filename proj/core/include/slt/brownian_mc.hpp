#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Planar Gaussian mollifier (2 pi eps)^{-1} exp(-|x|^2 / (2 eps)).
double delta_eps(Vec2 x, double eps);

/// A discretized planar Brownian path on the grid 0, dt, 2dt, ..., with
/// floor(T/dt) steps. Increments are N(0, dt) per coordinate, drawn by
/// Box-Muller from the Philox4x32-10 stream (seed, stream).
struct PathSample {
  double T = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<Vec2> points;
};

/// Number of grid steps floor(T/dt), tolerant to T/dt landing a hair below
/// an integer.
std::size_t grid_steps(double T, double dt);

/// Reproducible path: the same (T, dt, seed, stream) gives bit-identical
/// points. Throws DomainError unless 0 < dt <= T.
PathSample sample_path(double T, double dt, std::uint64_t seed, std::uint64_t stream = 0);

/// Left-point double Riemann sum of L_eps,
///   dt^2 sum_{j < i} delta_eps(points[i] - points[j]),
/// over all grid index pairs with j < i (the diagonal is excluded).
double l_eps_riemann(const PathSample& path, double eps);

/// The same sum for several eps values in one pass over the pairs.
std::vector<double> l_eps_riemann(const PathSample& path, std::span<const double> eps);

/// dt^2 sum_{j<i} E[delta_eps(B_{t_i} - B_{t_j})]
///   = dt^2/(2 pi) sum_{k=1}^{N} (N + 1 - k) / (k dt + eps),
/// the exact expectation of l_eps_riemann (N = grid_steps(T, dt)).
double expected_l_eps_riemann(double T, double eps, double dt);

struct MCEstimate {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased sample variance
  double std_error_mean = 0.0;
  double std_error_variance = 0.0;  ///< from the sample fourth central moment
  long n_paths = 0;
  std::uint64_t seed = 0;
};

/// Moments of l_eps_riemann over paths 0..n_paths-1 of `seed`. Each path is
/// its own Philox stream, and the reduction runs in path order, so the
/// result does not depend on `workers`.
MCEstimate mc_moments(double T, double eps, double dt, long n_paths, std::uint64_t seed,
                      unsigned workers = 1);

/// One estimate per eps, all from the same paths.
std::vector<MCEstimate> mc_moments(double T, std::span<const double> eps, double dt, long n_paths,
                                   std::uint64_t seed, unsigned workers = 1);

namespace detail {

/// sum_{0 <= j < i < n} exp(-coeff[c] * |p_i - p_j|^2) for every c,
/// accumulated row by row. Points in structure-of-arrays form.
void gaussian_pair_sums(std::span<const double> x, std::span<const double> y,
                        std::span<const double> coeff, std::span<double> out);

}  // namespace detail

}  // namespace slt

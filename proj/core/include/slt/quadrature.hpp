#pragma once

#include <functional>

namespace slt {

/// How integrate_triangle covers the triangle {0 <= u <= v <= T}.
enum class TriangleScheme {
  /// Map the triangle onto the unit square with v - u = T w^g (g the edge
  /// grading) and u = z (T - (v - u)); refine rectangles by bisecting the
  /// coordinate with the larger error indicator. Edge singularities along
  /// v = u cost O(log) cells.
  graded_square,
  /// Collapsed (Duffy) tensor rule on triangle cells, longest-edge
  /// bisection. Cells meeting v = u are graded toward it inside the rule.
  simplex_bisection,
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_cells = 200000;
  /// Mesh grading exponent toward the v = u edge (>= 1).
  double edge_grading = 2.0;
  TriangleScheme scheme = TriangleScheme::graded_square;
  /// Threads used for cell evaluation; results do not depend on it.
  unsigned workers = 1;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int cells_used = 0;
  bool converged = false;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double u, double v)>;

/// Integral of f over {0 <= u <= v <= T}. f may be singular (integrably) on
/// the edge v = u: a SingularInput thrown exactly on that edge counts as a
/// zero contribution, anywhere else it is rethrown as PropagatedSingularity,
/// as is a non-finite value off the edge. When max_cells is exhausted the
/// best estimate is returned with converged = false.
QuadratureResult integrate_triangle(const Integrand2D& f, double T, const QuadratureConfig& cfg);

/// Integral of f over [a, b] with the same tolerance contract. Integrable
/// endpoint singularities (e.g. ln t at 0) are handled by adaptive bisection.
QuadratureResult integrate_interval(const Integrand1D& f, double a, double b,
                                    const QuadratureConfig& cfg);

}  // namespace slt

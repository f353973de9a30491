#pragma once

#include <span>

#include "slt/model.hpp"

namespace slt {

/// Conjugate Hoelder exponents for a target rate alpha in (0, 1):
/// q = 2/alpha, p = 2/(2 - alpha), so that 1/p + 1/q = 1 and the bound
/// carries eps^{2/q} = eps^alpha.
struct HoelderParams {
  double alpha = 0.0;
  double p = 0.0;
  double q = 0.0;
};

HoelderParams hoelder_from_alpha(double alpha);

/// f_p(n) = 2n(2n-1) / (n^2 (pn - 1)^{2/p}), the level-n term of the bound
/// series after the multi-index sum.
double bound_term(double p, int n);

/// A series value together with a certified half-width.
struct CertifiedSum {
  double value = 0.0;
  double half_width = 0.0;
  long terms_summed = 0;
};

/// sum_{n >= first} f_p(n) for 1 < p < 2 and first >= 1. Terms decay like
/// n^{-2/p}; the remainder after direct summation is bracketed by the
/// trapezoid and midpoint integral comparisons (f_p is convex for n > 2)
/// and the bracket is narrowed until its half-width is below 1e-13 of the
/// value.
CertifiedSum bound_series_tail(double p, int first);

/// sum_{n >= 2} f_p(n). Throws DomainError unless 1 < p < 2.
double bound_series(double p);

/// 4p / ((2-p) pi^2) * T^{2/p} * eps^{2/q}: the factor common to every
/// per-level bound.
double bound_prefactor(const HoelderParams& h, double T, double eps);

struct BoundBreakdown {
  HoelderParams hoelder;
  double prefactor = 0.0;
  double series = 0.0;           ///< bound_series(p)
  double level_one_term = 0.0;   ///< prefactor * f_p(1)
  double higher_levels = 0.0;    ///< prefactor * bound_series(p)
  double total = 0.0;
};

/// Upper bound on ||L_{eps,c}(T) - L_c(T)||^2 for rate alpha.
///
/// Levels n >= 2: the four-term difference kernel is dominated by its
/// (v-u) term, and Hoelder's inequality on int_0^eps dx (x+tau)^{-n}
/// trades a factor eps^{2/q} against the convergent sum of f_p(n).
///
/// Level one: with h(x) = ln(1 + eps/x), the level-one difference kernel is
/// -(1/4pi) [(h(T) - h(T-u)) - (h(v) - h(v-u))]. Each h-term is at most
/// h(v-u), so its square is at most 16 h(v-u)^2 / (16 pi^2). The level
/// weight 8 (two multi-indices, (2,0)! = 2, symmetry factor 2) and
/// int int_{u<v} g(v-u) <= T int_0^T g(tau) d tau give
///   level one <= (8/pi^2) T int_0^T h(tau)^2 d tau.
/// Hoelder on h(tau) = int_0^eps dx/(x+tau) yields
///   h(tau)^2 <= eps^{2/q} tau^{2/p-2} / (p-1)^{2/p},
/// and int_0^T tau^{2/p-2} = p T^{2/p-1}/(2-p). The result is exactly the
/// n = 1 member f_p(1) = 2/(p-1)^{2/p} of the same series.
BoundBreakdown bound_breakdown(const ModelParams& params, double alpha);

/// bound_breakdown(params, alpha).total
double theoretical_bound(const ModelParams& params, double alpha);

/// Sum of the per-level bounds over levels n > n_max (n_max >= 1).
double level_tail_bound(const ModelParams& params, double alpha, int n_max);

struct RatePoint {
  double eps = 0.0;
  double value = 0.0;
};

/// Least-squares line through (ln eps, ln value).
struct RateFit {
  double alpha_hat = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

/// Throws DomainError for fewer than two points, nonpositive inputs or
/// duplicate eps.
RateFit fit_rate(std::span<const RatePoint> points);

}  // namespace slt

#pragma once

#include <span>

#include "slt/model.hpp"

namespace slt {

/// x^{-m} for x > 0. Integer powers m <= 7 use repeated multiplication,
/// larger ones exp(-m ln x).
double inverse_power(double x, int m);

/// x^{-m} - (x + eps)^{-m}, evaluated without cancellation as
/// x^{-m} * (-expm1(-m * log1p(eps / x))).
double shifted_power_difference(double x, double eps, int m);

/// Difference kernel K_eps(u, v, T) at total level n >= 2:
///
///   (T^{1-n} - (T+eps)^{1-n}) - (v^{1-n} - (v+eps)^{1-n})
///   - ((T-u)^{1-n} - (T-u+eps)^{1-n}) + ((v-u)^{1-n} - (v-u+eps)^{1-n})
///
/// Requires 0 <= u <= v <= T and eps > 0. Throws SingularInput when v == u
/// (the bare (v-u)^{1-n} term diverges), DomainError otherwise.
double k_epsilon(int n, double u, double v, const ModelParams& params);

/// Bracket of the level-n kernel,
///   (T+eps)^{1-n} - (v+eps)^{1-n} - (T-u+eps)^{1-n} + (v-u+eps)^{1-n}.
/// Throws SingularInput for eps == 0 and v == u.
double kernel_bracket(int n, double u, double v, const ModelParams& params);

/// (1/2pi) (-1/2)^n / (n (n-1) n1! n2!) for total level n = n1 + n2 > 1.
double kernel_prefactor(const MultiIndex& idx);

/// Kernel F_{2n,eps} of the centered local time at Fock degree
/// (2 n1, 2 n2), n = n1 + n2 > 1. The point must carry exactly 2n times.
/// Returns 0 when any time lies outside [0, T]; eps == 0 gives the kernel
/// of L_c and throws SingularInput on the diagonal v == u.
double kernel_f2n(const MultiIndex& idx, const KernelPoint& point, const ModelParams& params);

/// Level-one kernel F_{2,eps}(u1, u2)
///   = -(1/4pi) (ln(v+eps) + ln(T-u+eps) - ln(v-u+eps) - ln(T+eps)).
/// Shared by the multi-indices (1,0) and (0,1). Returns 0 outside [0,T]^2;
/// throws SingularInput for eps == 0 and u1 == u2.
double kernel_f2(std::span<const double, 2> times, const ModelParams& params);

/// E[L_eps] = (1/2pi) [ (T+eps) ln((T+eps)/eps) - T ] for planar Brownian
/// motion. Accepts T >= 0 and requires eps > 0 (the mean diverges at 0).
double mean_l_eps(double T, double eps);
double mean_l_eps(const ModelParams& params);

}  // namespace slt

#pragma once

namespace slt {

/// Weight a_n = 2n(2n-1) / (2 pi n (n-1))^2 that turns the reduced level
/// integral of (v-u)^{2n-2} X^2 into the level's Fock-norm contribution,
/// summed over all multi-indices with n1 + n2 = n (n >= 2).
double level_weight(int n);

/// Phi_N(x) = sum_{n > N} a_n x^{n-1} for 0 <= x <= 1 and N >= 1.
///
/// Partial fractions a_n = (1/4pi^2) [2/(n-1) - 2/n + 2/(n-1)^2] give the
/// full sum in closed form,
///   Phi_1(x) = (1/2pi^2) [ (1-x) ln(1-x) / x + 1 + Li2(x) ],
/// from which the head n = 2..N is subtracted for x >= 1/2; below 1/2 the
/// series is summed directly.
double weighted_power_tail(double x, int N);

/// Dilogarithm Li2(x) on [0, 1].
double dilog(double x);

}  // namespace slt

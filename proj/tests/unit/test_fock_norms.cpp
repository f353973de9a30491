#include <gtest/gtest.h>

#include <cmath>

#include "mc_oracles.hpp"
#include "slt/errors.hpp"
#include "slt/fock_norms.hpp"

namespace slt {
namespace {

// Reference values from tests/oracles/make_oracles.py: levels by mpmath
// tanh-sinh (20 digits), totals by QUADPACK on the closed-form resummation.
constexpr double kDiffL1e01 = 0.0082357364663290272;
constexpr double kDiffL2e01 = 0.0037185599344080987;
constexpr double kDiffL3e01 = 0.0022416879240835004;
constexpr double kDiffTotale01 = 0.024135618737561079;
constexpr double kNormL1e01 = 0.0033180601286501123;
constexpr double kNormTotale01 = 0.004892387746024799;
constexpr double kNormL1e05 = 0.00027620058411037452;
constexpr double kNormL2e05 = 3.4089786057629007e-5;
constexpr double kNormTotale05 = 0.0003179993815454285;
constexpr double kDiffTotale05 = 0.038209109999099372;
constexpr double kNormL1e0 = 0.020007593556872226;

constexpr double kRel = 1e-9;

const QuadratureConfig kCfg{};

TEST(FockNorms, LevelValuesMatchHighPrecisionOracle) {
  const ModelParams e01{1.0, 0.1};
  const ModelParams e05{1.0, 0.5};
  EXPECT_NEAR(level_one_diff_norm_sq(e01, kCfg).value, kDiffL1e01, kRel * kDiffL1e01);
  EXPECT_NEAR(level_diff_norm_sq(2, e01, kCfg).value, kDiffL2e01, kRel * kDiffL2e01);
  EXPECT_NEAR(level_diff_norm_sq(3, e01, kCfg).value, kDiffL3e01, kRel * kDiffL3e01);
  EXPECT_NEAR(level_norm_sq(1, e01, kCfg).value, kNormL1e01, kRel * kNormL1e01);
  EXPECT_NEAR(level_norm_sq(1, e05, kCfg).value, kNormL1e05, kRel * kNormL1e05);
  EXPECT_NEAR(level_norm_sq(2, e05, kCfg).value, kNormL2e05, kRel * kNormL2e05);
  EXPECT_NEAR(level_norm_sq(1, ModelParams{1.0, 0.0}, kCfg).value, kNormL1e0, kRel * kNormL1e0);
}

TEST(FockNorms, TotalsMatchHighPrecisionOracle) {
  EXPECT_NEAR(total_diff_norm_sq({1.0, 0.1}, 15, kCfg).total, kDiffTotale01, kRel * kDiffTotale01);
  EXPECT_NEAR(total_diff_norm_sq({1.0, 0.5}, 15, kCfg).total, kDiffTotale05, kRel * kDiffTotale05);
  EXPECT_NEAR(total_norm_sq({1.0, 0.1}, 15, kCfg).total, kNormTotale01, kRel * kNormTotale01);
  EXPECT_NEAR(total_norm_sq({1.0, 0.5}, 15, kCfg).total, kNormTotale05, kRel * kNormTotale05);
}

TEST(FockNorms, ReducedLevelsMatchUnreducedMonteCarlo) {
  struct Case {
    int n;
    bool diff;
    double eps;
  };
  for (const Case c : {Case{1, true, 0.1}, Case{2, true, 0.1}, Case{3, true, 0.1}, Case{2, false, 0.5}}) {
    const ModelParams p{1.0, c.eps};
    const auto mc = testing::unreduced_level(c.n, p, c.diff, 400000, 17 + c.n);
    const auto q = c.diff ? (c.n == 1 ? level_one_diff_norm_sq(p, kCfg) : level_diff_norm_sq(c.n, p, kCfg))
                          : level_norm_sq(c.n, p, kCfg);
    const double err = std::hypot(mc.std_error, q.quad.abs_error_estimate);
    EXPECT_LT(std::abs(mc.mean - q.value), 3.0 * err) << "n=" << c.n << " diff=" << c.diff;
  }
}

TEST(FockNorms, TotalsMatchCovarianceMonteCarlo) {
  const ModelParams p{1.0, 0.5};
  const auto var = testing::covariance_variance(p, 1000000, 3);
  const auto norm = total_norm_sq(p, 15, kCfg);
  EXPECT_LT(std::abs(var.mean - norm.total), 3.0 * var.std_error);
  const auto diff_mc = testing::covariance_diff(p, 1000000, 4);
  const auto diff = total_diff_norm_sq(p, 15, kCfg);
  EXPECT_LT(std::abs(diff_mc.mean - diff.total), 3.0 * diff_mc.std_error);
}

TEST(FockNorms, ZeroEpsGivesZeroDifference) {
  const ModelParams p{1.0, 0.0};
  EXPECT_EQ(level_diff_norm_sq(2, p, kCfg).value, 0.0);
  EXPECT_EQ(level_one_diff_norm_sq(p, kCfg).value, 0.0);
  EXPECT_EQ(total_diff_norm_sq(p, 5, kCfg).total, 0.0);
}

TEST(FockNorms, MonotoneComparisons) {
  const ModelParams e01{1.0, 0.1};
  EXPECT_LT(level_diff_norm_sq(3, e01, kCfg).value, level_diff_norm_sq(2, e01, kCfg).value);
  EXPECT_LT(level_one_diff_norm_sq({1.0, 0.05}, kCfg).value, level_one_diff_norm_sq(e01, kCfg).value);
  const double a = level_norm_sq(2, {1.0, 0.1}, kCfg).value;
  const double b = level_norm_sq(2, {1.0, 0.2}, kCfg).value;
  const double c = level_norm_sq(2, {1.0, 0.4}, kCfg).value;
  EXPECT_GT(a, b);
  EXPECT_GT(b, c);
  EXPECT_GT(level_norm_sq(2, {2.0, 0.1}, kCfg).value, a);
  EXPECT_GT(total_norm_sq({1.0, 0.25}, 15, kCfg).total, total_norm_sq({1.0, 0.5}, 15, kCfg).total);
}

TEST(FockNorms, SeriesAssembly) {
  const ModelParams p{1.0, 0.1};
  const auto s = total_diff_norm_sq(p, 15, kCfg);
  EXPECT_TRUE(s.converged());
  EXPECT_EQ(s.levels.size(), 15u);
  EXPECT_EQ(s.truncation_level, 15);
  double sum = 0.0;
  for (const auto& l : s.levels) {
    EXPECT_GE(l.value, 0.0);
    sum += l.value;
  }
  EXPECT_NEAR(s.partial_sum, sum, 1e-15 * sum);
  EXPECT_NEAR(s.total, s.partial_sum + s.tail, 1e-16);
  EXPECT_GE(s.total, s.levels.front().value);
  EXPECT_GE(s.tail_bound, s.tail);
  double prev = 0.0;
  for (int n_max : {2, 4, 8, 16}) {
    const auto t = total_diff_norm_sq(p, n_max, kCfg);
    EXPECT_GE(t.partial_sum, prev);
    EXPECT_NEAR(t.total, s.total, 1e-12 * s.total) << n_max;
    prev = t.partial_sum;
  }
}

TEST(FockNorms, TruncationStability) {
  for (double eps : {0.5, 0.1, 0.01}) {
    const ModelParams p{1.0, eps};
    const double d15 = total_diff_norm_sq(p, 15, kCfg).total;
    const double d25 = total_diff_norm_sq(p, 25, kCfg).total;
    EXPECT_LE(std::abs(d15 - d25), 1e-12 * d25) << eps;
    const double n15 = total_norm_sq(p, 15, kCfg).total;
    const double n25 = total_norm_sq(p, 25, kCfg).total;
    EXPECT_LE(std::abs(n15 - n25), 1e-12 * n25) << eps;
  }
}

TEST(FockNorms, LevelsBeyondTenAreResummed) {
  // Levels n > 10 carry about 1e-6 of the norm at eps = 0.5; the resummed
  // remainder makes the total independent of where explicit levels stop.
  const ModelParams p{1.0, 0.5};
  const auto ten = total_norm_sq(p, 10, kCfg);
  const auto many = total_norm_sq(p, 25, kCfg);
  EXPECT_NEAR(ten.total, many.total, 1e-12 * many.total);
  double beyond = 0.0;
  for (const auto& l : many.levels) {
    if (l.n > 10) {
      beyond += l.value;
    }
  }
  EXPECT_LT(beyond, 1e-5 * many.total);
  EXPECT_NEAR(ten.tail, beyond + many.tail, 1e-12 * many.total);
}

TEST(FockNorms, SchemesAgree) {
  QuadratureConfig simplex;
  simplex.scheme = TriangleScheme::simplex_bisection;
  const ModelParams p{1.0, 0.1};
  const double a = level_diff_norm_sq(2, p, kCfg).value;
  const double b = level_diff_norm_sq(2, p, simplex).value;
  EXPECT_NEAR(a, b, 1e-9 * a);
  const double c = level_one_diff_norm_sq(p, kCfg).value;
  const double d = level_one_diff_norm_sq(p, simplex).value;
  EXPECT_NEAR(c, d, 1e-9 * c);
}

TEST(FockNorms, Preconditions) {
  const ModelParams p{1.0, 0.1};
  EXPECT_THROW(level_diff_norm_sq(1, p, kCfg), DomainError);
  EXPECT_THROW(level_norm_sq(0, p, kCfg), DomainError);
  EXPECT_THROW(total_diff_norm_sq(p, 1, kCfg), DomainError);
  EXPECT_THROW(total_norm_sq(p, 0, kCfg), DomainError);
  EXPECT_THROW(level_norm_sq(2, {-1.0, 0.1}, kCfg), DomainError);
}

}  // namespace
}  // namespace slt

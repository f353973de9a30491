#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <ostream>

#include "slt/errors.hpp"
#include "slt/quadrature.hpp"

namespace slt {

void PrintTo(TriangleScheme s, std::ostream* os) {
  *os << (s == TriangleScheme::graded_square ? "graded_square" : "simplex_bisection");
}

namespace {

QuadratureConfig with_scheme(TriangleScheme s) {
  QuadratureConfig cfg;
  cfg.scheme = s;
  return cfg;
}

class TriangleSchemes : public ::testing::TestWithParam<TriangleScheme> {};

TEST_P(TriangleSchemes, AreaAndPolynomial) {
  const auto cfg = with_scheme(GetParam());
  auto area = integrate_triangle([](double, double) { return 1.0; }, 2.0, cfg);
  EXPECT_TRUE(area.converged);
  EXPECT_NEAR(area.value, 2.0, 1e-14);
  auto poly = integrate_triangle([](double u, double v) { return u * v * v; }, 1.5, cfg);
  EXPECT_NEAR(poly.value, std::pow(1.5, 5) / 10.0, 1e-13);
}

TEST_P(TriangleSchemes, LogSquaredEdgeSingularity) {
  // int_0^1 (1 - tau) ln^2 tau d tau = 2 - 1/4
  const auto cfg = with_scheme(GetParam());
  auto r = integrate_triangle(
      [](double u, double v) {
        const double l = std::log(v - u);
        return l * l;
      },
      1.0, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.75, 1e-9);
  EXPECT_LE(std::abs(r.value - 1.75), 10.0 * r.abs_error_estimate + 1e-12);
}

TEST_P(TriangleSchemes, InverseSqrtEdgeSingularity) {
  // int_0^1 (1 - tau) tau^{-1/2} d tau = 4/3
  const auto cfg = with_scheme(GetParam());
  auto r = integrate_triangle(
      [](double u, double v) {
        if (v == u) {
          throw SingularInput("edge");
        }
        return 1.0 / std::sqrt(v - u);
      },
      1.0, cfg);
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Quadrature, TriangleSchemes,
                         ::testing::Values(TriangleScheme::graded_square,
                                           TriangleScheme::simplex_bisection),
                         [](const auto& info) {
                           return info.param == TriangleScheme::graded_square ? "GradedSquare" : "SimplexBisection";
                         });

TEST(Quadrature, SchemesAgreeOnKinkedIntegrand) {
  auto f = [](double u, double v) { return std::abs(u - 0.3) * std::log1p(0.1 / (v - u + 1e-300)); };
  auto a = integrate_triangle(f, 1.0, with_scheme(TriangleScheme::graded_square));
  auto b = integrate_triangle(f, 1.0, with_scheme(TriangleScheme::simplex_bisection));
  EXPECT_NEAR(a.value, b.value, 1e-9 * std::abs(a.value));
}

TEST(Quadrature, OffEdgeSingularityPropagates) {
  QuadratureConfig cfg;
  EXPECT_THROW(integrate_triangle(
                   [](double u, double) -> double {
                     if (u > 0.5) {
                       throw SingularInput("interior");
                     }
                     return 1.0;
                   },
                   1.0, cfg),
               PropagatedSingularity);
  EXPECT_THROW(integrate_triangle(
                   [](double u, double) { return u > 0.2 ? std::numeric_limits<double>::quiet_NaN() : 1.0; },
                   1.0, cfg),
               PropagatedSingularity);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureConfig cfg;
  cfg.max_cells = 8;
  cfg.rel_tol = 1e-14;
  auto r = integrate_triangle([](double u, double v) { return std::sin(40.0 * u) * std::cos(35.0 * v); },
                              1.0, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.cells_used, 8);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(Quadrature, WorkerCountDoesNotChangeResult) {
  auto f = [](double u, double v) {
    const double l = std::log(v - u);
    return l * l * std::exp(u);
  };
  QuadratureConfig one;
  QuadratureConfig many;
  many.workers = 3;
  auto a = integrate_triangle(f, 1.0, one);
  auto b = integrate_triangle(f, 1.0, many);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.abs_error_estimate, b.abs_error_estimate);
  EXPECT_EQ(a.cells_used, b.cells_used);
}

TEST(Quadrature, IntervalRule) {
  QuadratureConfig cfg;
  auto lg = integrate_interval([](double t) { return std::log(t); }, 0.0, 1.0, cfg);
  EXPECT_NEAR(lg.value, -1.0, 1e-10);
  auto poly = integrate_interval([](double t) { return t * t * t * t; }, 0.0, 2.0, cfg);
  EXPECT_NEAR(poly.value, 32.0 / 5.0, 1e-13);
}

TEST(Quadrature, ConfigValidation) {
  QuadratureConfig cfg;
  cfg.rel_tol = 0.0;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = QuadratureConfig{};
  cfg.edge_grading = 0.5;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = QuadratureConfig{};
  EXPECT_THROW(integrate_triangle([](double, double) { return 1.0; }, -1.0, cfg), DomainError);
}

}  // namespace
}  // namespace slt

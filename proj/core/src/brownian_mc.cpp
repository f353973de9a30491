#include "slt/brownian_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slt/errors.hpp"
#include "slt/parallel.hpp"
#include "slt/philox.hpp"

namespace slt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_unit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1.0p-53; }

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("mollifier width eps must be finite and > 0, got " + std::to_string(eps));
  }
}

MCEstimate summarize(const std::vector<double>& v, std::uint64_t seed) {
  const auto n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) {
    mean += x;
  }
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : v) {
    const double d = (x - mean) * (x - mean);
    m2 += d;
    m4 += d * d;
  }
  MCEstimate e;
  e.mean = mean;
  e.variance = m2 / (n - 1.0);
  e.std_error_mean = std::sqrt(e.variance / n);
  const double var_of_var = (m4 / n - e.variance * e.variance * (n - 3.0) / (n - 1.0)) / n;
  e.std_error_variance = std::sqrt(std::max(var_of_var, 0.0));
  e.n_paths = static_cast<long>(v.size());
  e.seed = seed;
  return e;
}

}  // namespace

double delta_eps(Vec2 x, double eps) {
  check_eps(eps);
  return std::exp(-(x.x * x.x + x.y * x.y) / (2.0 * eps)) / (kTwoPi * eps);
}

std::size_t grid_steps(double T, double dt) {
  return static_cast<std::size_t>(std::floor(T / dt + 1e-9));
}

PathSample sample_path(double T, double dt, std::uint64_t seed, std::uint64_t stream) {
  if (!std::isfinite(T) || !std::isfinite(dt) || !(dt > 0.0) || !(dt <= T)) {
    throw DomainError("sample_path needs 0 < dt <= T, got T=" + std::to_string(T) +
                      " dt=" + std::to_string(dt));
  }
  const std::size_t steps = grid_steps(T, dt);
  PathSample path{T, dt, seed, stream, {}};
  path.points.resize(steps + 1);
  PhiloxStream rng(seed, stream);
  const double sd = std::sqrt(dt);
  Vec2 pos;
  for (std::size_t i = 1; i <= steps; ++i) {
    const auto w = rng.next_pair();
    const double u1 = 1.0 - to_unit(w[0]);
    const double u2 = to_unit(w[1]);
    const double r = sd * std::sqrt(-2.0 * std::log(u1));
    pos.x += r * std::cos(kTwoPi * u2);
    pos.y += r * std::sin(kTwoPi * u2);
    path.points[i] = pos;
  }
  return path;
}

std::vector<double> l_eps_riemann(const PathSample& path, std::span<const double> eps) {
  std::vector<double> coeff;
  coeff.reserve(eps.size());
  for (double e : eps) {
    check_eps(e);
    coeff.push_back(1.0 / (2.0 * e));
  }
  std::vector<double> x(path.points.size());
  std::vector<double> y(path.points.size());
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    x[i] = path.points[i].x;
    y[i] = path.points[i].y;
  }
  std::vector<double> out(eps.size());
  detail::gaussian_pair_sums(x, y, coeff, out);
  const double dt2 = path.dt * path.dt;
  for (std::size_t c = 0; c < eps.size(); ++c) {
    out[c] *= dt2 / (kTwoPi * eps[c]);
  }
  return out;
}

double l_eps_riemann(const PathSample& path, double eps) {
  return l_eps_riemann(path, std::span<const double>(&eps, 1)).front();
}

double expected_l_eps_riemann(double T, double eps, double dt) {
  check_eps(eps);
  if (!(dt > 0.0) || !(dt <= T)) {
    throw DomainError("expected_l_eps_riemann needs 0 < dt <= T");
  }
  const std::size_t N = grid_steps(T, dt);
  double sum = 0.0;
  for (std::size_t k = N; k >= 1; --k) {
    sum += static_cast<double>(N + 1 - k) / (static_cast<double>(k) * dt + eps);
  }
  return dt * dt * sum / kTwoPi;
}

std::vector<MCEstimate> mc_moments(double T, std::span<const double> eps, double dt, long n_paths,
                                   std::uint64_t seed, unsigned workers) {
  if (n_paths < 2) {
    throw DomainError("mc_moments needs at least two paths");
  }
  if (eps.empty()) {
    throw DomainError("mc_moments needs at least one eps");
  }
  for (double e : eps) {
    check_eps(e);
  }
  sample_path(T, dt, seed, 0);  // validates T and dt before spawning workers
  const auto paths = static_cast<std::size_t>(n_paths);
  std::vector<std::vector<double>> per_eps(eps.size(), std::vector<double>(paths));
  parallel_for(paths, resolve_workers(workers), [&](std::size_t p) {
    const auto path = sample_path(T, dt, seed, p);
    const auto l = l_eps_riemann(path, eps);
    for (std::size_t c = 0; c < eps.size(); ++c) {
      per_eps[c][p] = l[c];
    }
  });
  std::vector<MCEstimate> out;
  out.reserve(eps.size());
  for (const auto& v : per_eps) {
    out.push_back(summarize(v, seed));
  }
  return out;
}

MCEstimate mc_moments(double T, double eps, double dt, long n_paths, std::uint64_t seed,
                      unsigned workers) {
  return mc_moments(T, std::span<const double>(&eps, 1), dt, n_paths, seed, workers).front();
}

}  // namespace slt

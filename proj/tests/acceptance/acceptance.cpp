// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mc_oracles.hpp"
#include "slt/bounds.hpp"
#include "slt/brownian_mc.hpp"
#include "slt/fock_norms.hpp"
#include "slt/kernels.hpp"
#include "slt_app/cli.hpp"

namespace {

using namespace slt;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) {
    ++failures;
  }
  std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), sec);
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "slt");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  return app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::vector<double> rate_grid() {
  std::vector<double> g;
  for (int k = 4; k <= 10; ++k) {
    g.push_back(std::ldexp(1.0, -k));
  }
  return g;
}

}  // namespace

int main() {
  const QuadratureConfig quad;

  criterion(1, "combinatorial identity c_n = 4^n, n = 0..15", [] {
    int bad = 0;
    for (int n = 0; n <= 15; ++n) {
      bad += combinatorial_weight(n) != (std::uint64_t{1} << (2 * n));
    }
    return Outcome{bad == 0, fmt("%d mismatches", bad)};
  });

  criterion(2, "boundary cancellations of K_eps at u = 0 and v = T", [] {
    const double eps_values[] = {0.01, 0.1, 0.5, 1.0, 2.0};
    double worst = 0.0;
    int points = 0;
    for (int k = 0; k < 100; ++k) {
      const int n = 2 + k % 9;
      const ModelParams p{1.0, eps_values[(k / 9) % 5]};
      const double x = (k + 0.5) / 100.0;
      const double value = k % 2 == 0 ? k_epsilon(n, 0.0, x, p) : k_epsilon(n, 1.0 - x, 1.0, p);
      worst = std::max(worst, std::abs(value));
      ++points;
    }
    return Outcome{worst <= 1e-12 && points == 100, fmt("max |K| = %.3g over %d points", worst, points)};
  });

  criterion(3, "reduced levels n = 2, 3 vs 1e7-sample unreduced Monte Carlo (T=1, eps=0.1)", [&] {
    const ModelParams p{1.0, 0.1};
    std::string detail;
    bool ok = true;
    for (int n : {2, 3}) {
      const auto q = level_diff_norm_sq(n, p, quad);
      const auto mc = testing::unreduced_level(n, p, true, 10000000, 1000 + n);
      const double err = std::hypot(mc.std_error, q.quad.abs_error_estimate);
      const double z = (mc.mean - q.value) / err;
      ok = ok && std::abs(z) <= 3.0;
      const auto plain = testing::unreduced_level(n, p, true, 1000000, 2000 + n, testing::Sampling::uniform);
      detail += fmt("n=%d reduced %.10g, MC %.10g +- %.2g (z=%.2f; plain uniform 1e6: %.6g +- %.2g)  ", n,
                    q.value, mc.mean, mc.std_error, z, plain.mean, plain.std_error);
    }
    return Outcome{ok, detail};
  });

  const std::vector<double> mc_eps{0.25, 0.5};
  std::vector<MCEstimate> mc;
  criterion(4, "MC mean of L_eps vs closed form (T=1, eps=0.25,0.5, dt=1e-3, 1e4 paths)", [&] {
    mc = mc_moments(1.0, mc_eps, 1e-3, 10000, 20240501, 0);
    std::string detail;
    bool ok = true;
    for (std::size_t i = 0; i < mc_eps.size(); ++i) {
      const double exact = mean_l_eps(1.0, mc_eps[i]);
      const double z = (mc[i].mean - exact) / mc[i].std_error_mean;
      ok = ok && std::abs(z) <= 3.0;
      detail += fmt("eps=%g MC %.6g +- %.2g, exact %.6g, z=%.2f, grid bias %.2g  ", mc_eps[i], mc[i].mean,
                    mc[i].std_error_mean, exact, z, expected_l_eps_riemann(1.0, mc_eps[i], 1e-3) - exact);
    }
    return Outcome{ok, detail};
  });

  criterion(5, "MC variance of L_eps vs chaos series (T=1, eps=0.5, 1e4 paths)", [&] {
    if (mc.size() != 2) {
      return Outcome{false, "criterion 4 produced no Monte Carlo sample"};
    }
    const auto s = total_norm_sq(ModelParams{1.0, 0.5}, 15, quad);
    const double err = std::hypot(mc[1].std_error_variance, s.error_estimate());
    const double z = (mc[1].variance - s.total) / err;
    return Outcome{std::abs(z) <= 3.0 && s.converged(),
                   fmt("MC %.6g +- %.2g, chaos %.10g, z=%.2f", mc[1].variance, mc[1].std_error_variance, s.total, z)};
  });

  criterion(6, "convergence rate over eps = 2^-4..2^-10 (T=1)", [&] {
    std::vector<RatePoint> pts;
    std::vector<RatePoint> partial;
    bool decreasing = true;
    bool dominated = true;
    bool converged = true;
    for (double e : rate_grid()) {
      const ModelParams p{1.0, e};
      const auto s = total_diff_norm_sq(p, 15, quad);
      converged = converged && s.converged();
      if (!pts.empty() && !(s.total < pts.back().value)) {
        decreasing = false;
      }
      dominated = dominated && theoretical_bound(p, 0.9) >= s.total;
      pts.push_back({e, s.total});
      partial.push_back({e, s.partial_sum});
    }
    const auto fit = fit_rate(pts);
    const bool in_window = fit.alpha_hat > 0.80 && fit.alpha_hat < 1.05;
    const bool beats_half = fit.alpha_hat > 0.5;
    const double local = std::log(pts[pts.size() - 2].value / pts.back().value) / std::log(2.0);
    return Outcome{decreasing && in_window && beats_half && dominated && converged,
                   fmt("(a) decreasing=%s (b) alpha_hat=%.4f in (0.80,1.05)=%s, >0.5=%s, r^2=%.5f, "
                       "last local slope %.3f, partial-sum fit %.4f (c) bound >= value=%s",
                       decreasing ? "yes" : "no", fit.alpha_hat, in_window ? "yes" : "no",
                       beats_half ? "yes" : "no", fit.r_squared, local, fit_rate(partial).alpha_hat,
                       dominated ? "yes" : "no")};
  });

  criterion(7, "truncation stability n_max = 15 vs 25 (T=1, eps >= 0.01)", [&] {
    double worst = 0.0;
    double raw = 0.0;
    for (double e : {0.5, 0.25, 0.1, 0.05, 0.01}) {
      const ModelParams p{1.0, e};
      const auto d15 = total_diff_norm_sq(p, 15, quad);
      const auto d25 = total_diff_norm_sq(p, 25, quad);
      const auto n15 = total_norm_sq(p, 15, quad);
      const auto n25 = total_norm_sq(p, 25, quad);
      worst = std::max({worst, std::abs(d15.total - d25.total) / d25.total,
                        std::abs(n15.total - n25.total) / n25.total});
      raw = std::max(raw, std::abs(d15.partial_sum - d25.partial_sum) / d25.partial_sum);
    }
    return Outcome{worst <= 1e-12, fmt("max relative change %.3g (level sums alone, before the resummed "
                                       "remainder: %.3g)",
                                       worst, raw)};
  });

  criterion(8, "validate and rate outputs byte-identical across runs and --threads", [] {
    const auto root = fs::temp_directory_path() / ("slt_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::vector<std::string> files;
    int codes[4] = {};
    const std::vector<std::string> validate{"validate", "--T", "1", "--eps", "0.5", "--dt", "1e-3",
                                            "--n-paths", "10000", "--seed", "7"};
    const std::vector<std::string> rate{"rate", "--T", "1"};
    int k = 0;
    for (const std::string threads : {"1", "4"}) {
      auto v = validate;
      v.insert(v.end(), {std::string("--threads"), threads, std::string("--out-dir"), (root / ("v" + threads)).string()});
      codes[k++] = cli(v);
      auto r = rate;
      r.insert(r.end(), {std::string("--threads"), threads, std::string("--out-dir"), (root / ("r" + threads)).string()});
      codes[k++] = cli(r);
    }
    const auto v1 = slurp(root / "v1" / "validate.json");
    const auto v4 = slurp(root / "v4" / "validate.json");
    const auto r1 = slurp(root / "r1" / "rate.json");
    const auto r4 = slurp(root / "r4" / "rate.json");
    fs::remove_all(root);
    const bool same = !v1.empty() && !r1.empty() && v1 == v4 && r1 == r4;
    return Outcome{same && codes[0] == codes[2] && codes[1] == codes[3],
                   fmt("validate.json %zu bytes identical=%s (exit %d), rate.json %zu bytes identical=%s (exit %d)",
                       v1.size(), v1 == v4 ? "yes" : "no", codes[0], r1.size(), r1 == r4 ? "yes" : "no", codes[1])};
  });

  criterion(9, "synthetic power-law fit recovers the exponent", [] {
    double worst = 0.0;
    for (double a : {0.5, 0.9, 1.0, 1.7}) {
      std::vector<RatePoint> pts;
      for (double e : {0.1, 0.01, 0.001}) {
        pts.push_back({e, 3.0 * std::pow(e, a)});
      }
      worst = std::max(worst, std::abs(fit_rate(pts).alpha_hat - a));
    }
    return Outcome{worst <= 1e-12, fmt("max |alpha_hat - alpha| = %.3g", worst)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}

#include "slt_app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "slt/bounds.hpp"
#include "slt/brownian_mc.hpp"
#include "slt/errors.hpp"
#include "slt/fock_norms.hpp"
#include "slt/kernels.hpp"
#include "slt/parallel.hpp"

namespace slt::app {

namespace {

using Json = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::filesystem::path prepare_output(const RunConfig& cfg, const char* name) {
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
  f << doc.dump(2) << '\n';
}

std::vector<double> grid_or(const RunConfig& cfg, std::vector<double> fallback) {
  return cfg.eps_grid.empty() ? std::move(fallback) : cfg.eps_grid;
}

void csv_row(std::ostream& f, double T, double eps, int n, const char* kind, double value,
             double err, bool converged) {
  f << g17(T) << ',' << g17(eps) << ',' << n << ',' << kind << ',' << g17(value) << ','
    << g17(err) << ',' << (converged ? "true" : "false") << '\n';
}

}  // namespace

int cmd_kernel(const KernelArgs& args, std::ostream& out) {
  const ModelParams params{args.T, args.eps};
  params.validate();
  double value = 0.0;
  if (args.level_one) {
    if (args.times.size() != 2) {
      throw DomainError("--level-one needs exactly two --times");
    }
    value = kernel_f2(std::span<const double, 2>(args.times.data(), 2), params);
  } else {
    if (args.n1 < 0 || args.n2 < 0 || args.n1 + args.n2 < 2) {
      throw DomainError("--n1 + --n2 must be >= 2 (use --level-one for n = 1)");
    }
    value = kernel_f2n(MultiIndex{args.n1, args.n2}, KernelPoint(args.times), params);
  }
  out << g17(value + 0.0) << '\n';  // print -0 as 0
  return kOk;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  const auto grid = grid_or(cfg, default_rate_grid());
  validate_common(cfg, grid, true);
  const auto quad = cfg.quadrature();
  const auto path = prepare_output(cfg, "norms.csv");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
  f << "T,eps,n,kind,value,quad_err,converged\n";
  bool all_converged = true;
  for (double eps : grid) {
    const ModelParams params{cfg.T, eps};
    const auto norm = total_norm_sq(params, cfg.n_max, quad);
    const auto diff = total_diff_norm_sq(params, cfg.n_max, quad);
    for (int i = 0; i < cfg.n_max; ++i) {
      const auto& a = norm.levels[static_cast<std::size_t>(i)];
      const auto& b = diff.levels[static_cast<std::size_t>(i)];
      csv_row(f, cfg.T, eps, a.n, "norm", a.value, a.quad.abs_error_estimate, a.quad.converged);
      csv_row(f, cfg.T, eps, b.n, "diff", b.value, b.quad.abs_error_estimate, b.quad.converged);
    }
    csv_row(f, cfg.T, eps, -1, "norm", norm.total, norm.error_estimate(), norm.converged());
    csv_row(f, cfg.T, eps, -1, "diff", diff.total, diff.error_estimate(), diff.converged());
    all_converged = all_converged && norm.converged() && diff.converged();
  }
  f.close();
  out << "wrote " << path.string() << '\n';
  if (!all_converged) {
    out << "warning: some quadratures did not converge (converged=false rows)\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_rate(const RunConfig& cfg, std::ostream& out) {
  const auto grid = grid_or(cfg, default_rate_grid());
  validate_common(cfg, grid, false);
  if (grid.size() < 3) {
    throw DomainError("rate needs at least 3 eps values");
  }
  hoelder_from_alpha(cfg.alpha);
  if (cfg.synthetic_alpha && !(*cfg.synthetic_alpha > 0.0 && std::isfinite(*cfg.synthetic_alpha))) {
    throw DomainError("--synthetic exponent must be finite and > 0");
  }

  std::vector<RatePoint> points;
  Json rows = Json::array();
  Json bound_check = Json::array();
  bool all_converged = true;
  const auto quad = cfg.quadrature();
  for (double eps : grid) {
    const ModelParams params{cfg.T, eps};
    const double bound = theoretical_bound(params, cfg.alpha);
    Json row;
    row["eps"] = eps;
    double value = 0.0;
    if (cfg.synthetic_alpha) {
      value = std::pow(eps, *cfg.synthetic_alpha);
      row["value"] = value;
    } else {
      const auto s = total_diff_norm_sq(params, cfg.n_max, quad);
      value = s.total;
      all_converged = all_converged && s.converged();
      row["value"] = value;
      row["partial_sum"] = s.partial_sum;
      row["tail"] = s.tail;
      row["quad_err"] = s.error_estimate();
      row["converged"] = s.converged();
    }
    row["bound"] = bound;
    const bool ok = bound >= value;
    row["bound_ok"] = ok;
    bound_check.push_back(ok);
    rows.push_back(row);
    points.push_back({eps, value});
  }
  const auto fit = fit_rate(points);

  Json doc;
  doc["alpha_hat"] = fit.alpha_hat;
  doc["intercept"] = fit.intercept;
  doc["r_squared"] = fit.r_squared;
  doc["points_used"] = fit.points_used;
  doc["T"] = cfg.T;
  doc["alpha"] = cfg.alpha;
  doc["n_max"] = cfg.n_max;
  doc["synthetic"] = cfg.synthetic_alpha ? Json(*cfg.synthetic_alpha) : Json(nullptr);
  doc["points"] = rows;
  doc["varadhan_regime_exceeded"] = fit.alpha_hat > 0.5;
  doc["bound_check"] = bound_check;
  const auto path = prepare_output(cfg, "rate.json");
  write_json(path, doc);
  out << "alpha_hat " << g17(fit.alpha_hat) << "\nwrote " << path.string() << '\n';

  if (cfg.plot) {
    const auto plot_path = prepare_output(cfg, "rate_plot.csv");
    std::ofstream p(plot_path, std::ios::binary | std::ios::trunc);
    p << "log10_eps,log10_value,fit_line\n";
    for (const auto& pt : points) {
      const double fit_ln = fit.intercept + fit.alpha_hat * std::log(pt.eps);
      p << g17(std::log10(pt.eps)) << ',' << g17(std::log10(pt.value)) << ','
        << g17(fit_ln / std::log(10.0)) << '\n';
    }
    out << "wrote " << plot_path.string() << '\n';
  }
  return all_converged ? kOk : kNotConverged;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto grid = grid_or(cfg, {0.5});
  validate_common(cfg, grid, false);
  if (cfg.n_paths < 100) {
    throw DomainError("validate needs --n-paths >= 100");
  }
  if (!(cfg.dt > 0.0) || !(cfg.dt <= cfg.T)) {
    throw DomainError("--dt must satisfy 0 < dt <= T");
  }
  const auto mc = mc_moments(cfg.T, grid, cfg.dt, cfg.n_paths, cfg.seed, resolve_workers(cfg.threads));
  const auto quad = cfg.quadrature();

  Json results = Json::array();
  bool within = true;
  bool all_converged = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = grid[i];
    const auto chaos = total_norm_sq(ModelParams{cfg.T, eps}, cfg.n_max, quad);
    all_converged = all_converged && chaos.converged();
    const double exact_mean = mean_l_eps(cfg.T, eps);
    const double z_mean = (mc[i].mean - exact_mean) / mc[i].std_error_mean;
    const double var_err = std::hypot(mc[i].std_error_variance, chaos.error_estimate());
    const double z_var = (mc[i].variance - chaos.total) / var_err;
    within = within && std::abs(z_mean) <= 3.0 && std::abs(z_var) <= 3.0;
    Json r;
    r["eps"] = eps;
    r["mc_mean"] = mc[i].mean;
    r["mc_mean_std_error"] = mc[i].std_error_mean;
    r["exact_mean"] = exact_mean;
    r["z_mean"] = z_mean;
    r["mc_variance"] = mc[i].variance;
    r["mc_variance_std_error"] = mc[i].std_error_variance;
    r["chaos_variance"] = chaos.total;
    r["chaos_variance_error"] = chaos.error_estimate();
    r["z_variance"] = z_var;
    results.push_back(r);
  }
  Json doc;
  doc["T"] = cfg.T;
  doc["dt"] = cfg.dt;
  doc["n_paths"] = cfg.n_paths;
  doc["seed"] = cfg.seed;
  doc["n_max"] = cfg.n_max;
  doc["results"] = results;
  doc["all_within_3_sigma"] = within;
  const auto path = prepare_output(cfg, "validate.json");
  write_json(path, doc);
  out << (within ? "validation passed" : "validation FAILED") << "\nwrote " << path.string() << '\n';
  if (!all_converged) {
    return kNotConverged;
  }
  return within ? kOk : kValidationFailed;
}

int cmd_bound(double T, double alpha, double eps, std::ostream& out) {
  const auto b = bound_breakdown(ModelParams{T, eps}, alpha);
  out << "alpha " << g17(alpha) << '\n'
      << "p " << g17(b.hoelder.p) << '\n'
      << "q " << g17(b.hoelder.q) << '\n'
      << "bound_series " << g17(b.series) << '\n'
      << "prefactor " << g17(b.prefactor) << '\n'
      << "level_one_term " << g17(b.level_one_term) << '\n'
      << "higher_levels " << g17(b.higher_levels) << '\n'
      << "theoretical_bound " << g17(b.total) << '\n';
  return kOk;
}

}  // namespace slt::app

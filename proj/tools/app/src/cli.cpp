#include "slt_app/cli.hpp"

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slt/errors.hpp"
#include "slt_app/commands.hpp"

namespace slt::app {

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaos-expansion norms and Monte Carlo checks for the planar Brownian "
               "self-intersection local time"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file (keys are long flag names); flags win");

  RunConfig cfg;
  std::optional<double> eps;
  std::vector<double> eps_grid;
  app.add_option("--T", cfg.T, "time horizon")->capture_default_str();
  app.add_option("--eps", eps, "single mollifier width");
  app.add_option("--eps-grid", eps_grid, "comma-separated, strictly decreasing eps values")
      ->delimiter(',');
  app.add_option("--n-max", cfg.n_max, "last chaos level computed explicitly")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "rate exponent for the bound, in (0, 1)")->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance")->capture_default_str();
  app.add_option("--max-cells", cfg.max_cells, "quadrature cell budget per integral")
      ->capture_default_str();
  app.add_option("--dt", cfg.dt, "Monte Carlo time step")->capture_default_str();
  app.add_option("--n-paths", cfg.n_paths, "Monte Carlo path count")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--out-dir", cfg.output_dir, "directory for output files")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker cap (0: $SLT_THREADS or all cores)");
  app.add_flag("--plot", cfg.plot, "rate: also write rate_plot.csv");

  KernelArgs kargs;
  auto* kernel = app.add_subcommand("kernel", "evaluate F_{2n,eps} or the level-one kernel");
  kernel->add_option("--n1", kargs.n1, "first multi-index component");
  kernel->add_option("--n2", kargs.n2, "second multi-index component");
  kernel->add_flag("--level-one", kargs.level_one, "evaluate the n = 1 (logarithmic) kernel");
  kernel->add_option("--times", kargs.times, "comma-separated time arguments")
      ->delimiter(',')
      ->required();
  auto* norms = app.add_subcommand("norms", "per-level Fock norms over the eps grid -> norms.csv");
  auto* rate = app.add_subcommand("rate", "fit the convergence exponent -> rate.json");
  rate->add_option("--synthetic", cfg.synthetic_alpha,
                   "fit exact eps^a data instead of computed norms");
  auto* validate = app.add_subcommand("validate", "Monte Carlo cross-check -> validate.json");
  auto* bound = app.add_subcommand("bound", "print the Hoelder bound and its parts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << first_line(e.what()) << '\n';
    return kArgumentError;
  }

  try {
    if (eps && !eps_grid.empty()) {
      throw DomainError("give either --eps or --eps-grid, not both");
    }
    if (eps) {
      cfg.eps_grid = {*eps};
    } else {
      cfg.eps_grid = eps_grid;
    }
    if (kernel->parsed()) {
      kargs.T = cfg.T;
      kargs.eps = eps.value_or(0.0);
      return cmd_kernel(kargs, out);
    }
    if (norms->parsed()) {
      return cmd_norms(cfg, out);
    }
    if (rate->parsed()) {
      return cmd_rate(cfg, out);
    }
    if (validate->parsed()) {
      return cmd_validate(cfg, out);
    }
    if (bound->parsed()) {
      return cmd_bound(cfg.T, cfg.alpha, eps.value_or(0.01), out);
    }
  } catch (const SingularInput& e) {
    err << "singular input: " << first_line(e.what()) << '\n';
    return kSingularInput;
  } catch (const PropagatedSingularity& e) {
    err << "singular input: " << first_line(e.what()) << '\n';
    return kSingularInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << first_line(e.what()) << '\n';
    return kArgumentError;
  } catch (const std::exception& e) {
    err << "error: " << first_line(e.what()) << '\n';
    return 1;
  }
  return kArgumentError;
}

}  // namespace slt::app

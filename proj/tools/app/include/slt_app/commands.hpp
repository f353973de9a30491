#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "slt_app/run_config.hpp"

namespace slt::app {

struct KernelArgs {
  bool level_one = false;
  int n1 = 0;
  int n2 = 0;
  std::vector<double> times;
  double T = 1.0;
  double eps = 0.0;
};

/// Each command returns its exit code; argument problems surface as
/// DomainError and are mapped to codes by run_cli.
int cmd_kernel(const KernelArgs& args, std::ostream& out);

/// norms.csv: per eps, rows for levels 1..n_max (norm then diff), then the
/// two totals with n = -1.
int cmd_norms(const RunConfig& cfg, std::ostream& out);

/// rate.json, and rate_plot.csv with --plot.
int cmd_rate(const RunConfig& cfg, std::ostream& out);

/// validate.json: Monte Carlo moments against the chaos-side values.
int cmd_validate(const RunConfig& cfg, std::ostream& out);

int cmd_bound(double T, double alpha, double eps, std::ostream& out);

}  // namespace slt::app

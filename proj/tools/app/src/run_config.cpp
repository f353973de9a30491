#include "slt_app/run_config.hpp"

#include <cmath>
#include <string>

#include "slt/errors.hpp"
#include "slt/parallel.hpp"

namespace slt::app {

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig q;
  q.rel_tol = rel_tol;
  q.abs_tol = abs_tol;
  q.max_cells = max_cells;
  q.workers = resolve_workers(threads);
  return q;
}

std::vector<double> default_rate_grid() {
  std::vector<double> grid;
  for (int k = 4; k <= 10; ++k) {
    grid.push_back(std::ldexp(1.0, -k));
  }
  return grid;
}

void validate_common(const RunConfig& cfg, const std::vector<double>& grid, bool allow_zero_eps) {
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) {
    throw DomainError("--T must be finite and > 0");
  }
  if (cfg.n_max < 2 || cfg.n_max > 200) {
    throw DomainError("--n-max must lie in [2, 200]");
  }
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol >= 0.0)) {
    throw DomainError("--rel-tol must be > 0 and --abs-tol >= 0");
  }
  if (grid.empty()) {
    throw DomainError("the eps grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = grid[i];
    const bool ok = std::isfinite(e) && (e > 0.0 || (allow_zero_eps && e == 0.0));
    if (!ok) {
      throw DomainError("eps grid values must be " + std::string(allow_zero_eps ? ">= 0" : "> 0") +
                        ", got " + std::to_string(e));
    }
    if (i > 0 && !(e < grid[i - 1])) {
      throw DomainError("eps grid must be strictly decreasing");
    }
  }
}

}  // namespace slt::app

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slt/quadrature.hpp"

namespace slt::app {

enum ExitCode : int {
  kOk = 0,
  kArgumentError = 2,
  kSingularInput = 3,
  kNotConverged = 4,
  kValidationFailed = 5,
};

/// Settings shared by every command. Empty eps_grid means "use the
/// command's default grid".
struct RunConfig {
  double T = 1.0;
  std::vector<double> eps_grid;
  int n_max = 15;
  double alpha = 0.9;
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_cells = 200000;  ///< quadrature cell budget per integral
  double dt = 1e-3;
  long n_paths = 10000;
  std::uint64_t seed = 7;
  std::string output_dir = ".";
  unsigned threads = 0;  ///< 0: $SLT_THREADS, then hardware concurrency
  bool plot = false;
  std::optional<double> synthetic_alpha;

  QuadratureConfig quadrature() const;
};

/// {2^-4, ..., 2^-10}
std::vector<double> default_rate_grid();

/// Throws DomainError on T, tolerances, n_max or the grid. With
/// allow_zero_eps the grid may end in eps = 0 (norms of L_c itself).
void validate_common(const RunConfig& cfg, const std::vector<double>& grid, bool allow_zero_eps);

}  // namespace slt::app

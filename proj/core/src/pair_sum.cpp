#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "slt/brownian_mc.hpp"

namespace slt::detail {

void gaussian_pair_sums(std::span<const double> x, std::span<const double> y,
                        std::span<const double> coeff, std::span<double> out) {
  const std::size_t n = x.size();
  const std::size_t nc = coeff.size();
  for (std::size_t c = 0; c < nc; ++c) {
    out[c] = 0.0;
  }
  std::vector<double> d2(n);
  for (std::size_t i = 1; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    const double* px = x.data();
    const double* py = y.data();
    double* pd = d2.data();
#pragma omp simd
    for (std::size_t j = 0; j < i; ++j) {
      const double dx = xi - px[j];
      const double dy = yi - py[j];
      pd[j] = dx * dx + dy * dy;
    }
    for (std::size_t c = 0; c < nc; ++c) {
      const double k = coeff[c];
      double row = 0.0;
#pragma omp simd reduction(+ : row)
      for (std::size_t j = 0; j < i; ++j) {
        row += std::exp(-k * pd[j]);
      }
      out[c] += row;
    }
  }
}

}  // namespace slt::detail

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slt {

/// Time horizon T and mollifier width eps. eps == 0 selects the
/// renormalized limit object L_c instead of L_{eps,c}.
struct ModelParams {
  double T = 1.0;
  double eps = 0.0;

  /// Throws DomainError unless T > 0, eps >= 0 and both are finite.
  void validate() const;
};

/// Exact n! for n <= 20.
std::uint64_t factorial_exact(int n);

/// n! as a double: exact table up to 20!, log-gamma beyond.
double factorial(int n);

/// Binomial coefficient C(n, k), exact for n <= 62.
std::uint64_t binomial_exact(int n, int k);

/// Chaos level of the two-component Fock space: (n1, n2), one order per
/// planar coordinate.
struct MultiIndex {
  int n1 = 0;
  int n2 = 0;

  [[nodiscard]] int total() const noexcept { return n1 + n2; }

  /// n1! * n2!; exact when both components are <= 20.
  [[nodiscard]] double factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// The time arguments of a level-2n kernel. Kernels depend on the times only
/// through their minimum and maximum, which are cached here.
class KernelPoint {
 public:
  explicit KernelPoint(std::span<const double> times);

  [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] double u() const noexcept { return u_; }
  [[nodiscard]] double v() const noexcept { return v_; }

 private:
  std::vector<double> times_;
  double u_ = 0.0;
  double v_ = 0.0;
};

}  // namespace slt

#include "slt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "slt/errors.hpp"

namespace slt {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

void check_p(double p) {
  if (!(p > 1.0 && p < 2.0)) {
    throw DomainError("Hoelder exponent p must lie in (1, 2), got " + std::to_string(p));
  }
}

// int_a^inf f_p(x) dx for a >= 2, with f_p(x) = (4 - 2/x) (px - 1)^{-s},
// s = 2/p. The 4(px-1)^{-s} part is elementary; for the 2/x part,
// substituting x = a/t gives int_0^1 t^{s-1} (pa - t)^{-s} dt, expanded in
// powers of t/(pa).
double tail_integral(double p, double a) {
  const double s = 2.0 / p;
  const double pa = p * a;
  const double main = 4.0 * std::pow(pa - 1.0, 1.0 - s) / (p * (s - 1.0));
  double coeff = 1.0;  // (s)_k / k!
  double ratio_pow = 1.0;
  double series = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double term = coeff * ratio_pow / (s + k);
    series += term;
    if (term < 1e-18 * series) {
      break;
    }
    coeff *= (s + k) / (k + 1.0);
    ratio_pow /= pa;
  }
  return main - 2.0 * std::pow(pa, -s) * series;
}

}  // namespace

HoelderParams hoelder_from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("rate alpha must lie in (0, 1) for a convergent bound, got " +
                      std::to_string(alpha));
  }
  return HoelderParams{alpha, 2.0 / (2.0 - alpha), 2.0 / alpha};
}

double bound_term(double p, int n) {
  if (n < 1) {
    throw DomainError("bound_term needs n >= 1");
  }
  const double dn = n;
  return 2.0 * dn * (2.0 * dn - 1.0) / (dn * dn * std::pow(p * dn - 1.0, 2.0 / p));
}

CertifiedSum bound_series_tail(double p, int first) {
  check_p(p);
  if (first < 1) {
    throw DomainError("bound_series_tail needs first >= 1");
  }
  // Direct part sum_{first <= n < cut}; the remainder sum_{n >= cut} lies in
  // [I(cut) + f(cut)/2, I(cut - 1/2)] once f is convex on [cut - 1/2, inf).
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double x) {
    const double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  long n = first;
  long cut = std::max<long>(first, 3) + 1024;
  constexpr long kMaxCut = 1L << 30;
  for (;;) {
    for (; n < cut; ++n) {
      add(bound_term(p, static_cast<int>(n)));
    }
    const double head = sum + comp;
    const double lo = tail_integral(p, static_cast<double>(cut)) + 0.5 * bound_term(p, static_cast<int>(cut));
    const double hi = tail_integral(p, static_cast<double>(cut) - 0.5);
    const double value = head + 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    if (half <= 1e-13 * value || cut >= kMaxCut) {
      return CertifiedSum{value, std::max(half, 0.0), cut - first};
    }
    cut *= 2;
  }
}

double bound_series(double p) { return bound_series_tail(p, 2).value; }

double bound_prefactor(const HoelderParams& h, double T, double eps) {
  return 4.0 * h.p / ((2.0 - h.p) * kPi2) * std::pow(T, 2.0 / h.p) * std::pow(eps, 2.0 / h.q);
}

BoundBreakdown bound_breakdown(const ModelParams& params, double alpha) {
  params.validate();
  if (!(params.eps > 0.0)) {
    throw DomainError("the convergence bound needs eps > 0");
  }
  BoundBreakdown b;
  b.hoelder = hoelder_from_alpha(alpha);
  b.prefactor = bound_prefactor(b.hoelder, params.T, params.eps);
  b.series = bound_series(b.hoelder.p);
  b.level_one_term = b.prefactor * bound_term(b.hoelder.p, 1);
  b.higher_levels = b.prefactor * b.series;
  b.total = b.level_one_term + b.higher_levels;
  return b;
}

double theoretical_bound(const ModelParams& params, double alpha) {
  return bound_breakdown(params, alpha).total;
}

double level_tail_bound(const ModelParams& params, double alpha, int n_max) {
  params.validate();
  if (n_max < 1) {
    throw DomainError("level_tail_bound needs n_max >= 1");
  }
  if (params.eps == 0.0) {
    return 0.0;
  }
  const auto h = hoelder_from_alpha(alpha);
  const auto tail = bound_series_tail(h.p, n_max + 1);
  return bound_prefactor(h, params.T, params.eps) * (tail.value + tail.half_width);
}

RateFit fit_rate(std::span<const RatePoint> points) {
  if (points.size() < 2) {
    throw DomainError("fit_rate needs at least two points");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : points) {
    if (!(pt.eps > 0.0) || !(pt.value > 0.0) || !std::isfinite(pt.eps) || !std::isfinite(pt.value)) {
      throw DomainError("fit_rate needs finite positive eps and values");
    }
    x.push_back(std::log(pt.eps));
    y.push_back(std::log(pt.value));
  }
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("fit_rate needs distinct eps values");
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  RateFit fit;
  fit.alpha_hat = sxy / sxx;
  fit.intercept = my - fit.alpha_hat * mx;
  fit.points_used = static_cast<int>(x.size());
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.alpha_hat * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace slt

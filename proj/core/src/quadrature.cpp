#include "slt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "slt/errors.hpp"
#include "slt/parallel.hpp"

namespace slt {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_cells < 4) {
    throw DomainError("max_cells must be >= 4");
  }
  if (!(edge_grading >= 1.0) || !std::isfinite(edge_grading)) {
    throw DomainError("edge_grading must be finite and >= 1");
  }
}

namespace {

// 15-point Gauss-Kronrod rule with its embedded 7-point Gauss rule, mapped
// to [0, 1]. Abscissae and weights from QUADPACK's qk15.
struct UnitRule {
  std::array<double, 15> node{};
  std::array<double, 15> kronrod{};
  std::array<double, 15> gauss{};
};

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr UnitRule make_unit_rule() {
  UnitRule r{};
  for (std::size_t k = 0; k < 8; ++k) {
    const double g = (k % 2 == 1) ? kWg[k / 2] : 0.0;
    // left half (ascending) and its mirror; k == 7 is the midpoint.
    r.node[k] = 0.5 * (1.0 - kXgk[k]);
    r.kronrod[k] = 0.5 * kWgk[k];
    r.gauss[k] = 0.5 * g;
    r.node[14 - k] = 0.5 * (1.0 + kXgk[k]);
    r.kronrod[14 - k] = 0.5 * kWgk[k];
    r.gauss[14 - k] = 0.5 * g;
  }
  return r;
}

constexpr UnitRule kRule = make_unit_rule();
constexpr std::size_t kN = 15;

constexpr double kRoundoffFactor = 50.0 * DBL_EPSILON;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double roundoff = 0.0;  // error floor below which splitting is pointless
  bool split_first = true;
};

// Neumaier-compensated sum in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Cell>
struct Node {
  Cell cell;
  Estimate est;
};

// Global adaptive refinement. Each round splits the largest-error cells
// whose combined error covers the current excess over the tolerance; the
// selection and the reduction order depend only on the cell list, never on
// the worker count.
template <typename Cell, typename Eval, typename Split>
QuadratureResult refine(std::vector<Cell> initial, Eval&& eval, Split&& split,
                        const QuadratureConfig& cfg) {
  std::vector<Node<Cell>> nodes(initial.size());
  parallel_for(initial.size(), cfg.workers, [&](std::size_t i) {
    nodes[i] = Node<Cell>{initial[i], eval(initial[i])};
  });

  QuadratureResult result;
  std::vector<std::size_t> order;
  for (;;) {
    CompensatedSum value;
    CompensatedSum error;
    for (const auto& n : nodes) {
      value.add(n.est.value);
      error.add(std::max(n.est.error, n.est.roundoff));
    }
    result.value = value.value();
    result.abs_error_estimate = error.value();
    result.cells_used = static_cast<int>(nodes.size());

    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(result.value));
    if (result.abs_error_estimate <= tol) {
      result.converged = true;
      return result;
    }
    const auto room = static_cast<std::size_t>(cfg.max_cells) - std::min(nodes.size(), static_cast<std::size_t>(cfg.max_cells));
    if (room == 0) {
      return result;
    }

    order.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].est.error > nodes[i].est.roundoff) {
        order.push_back(i);
      }
    }
    if (order.empty()) {
      return result;  // roundoff-limited
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return nodes[a].est.error > nodes[b].est.error;
    });
    const double excess = result.abs_error_estimate - tol;
    double covered = 0.0;
    std::size_t take = 0;
    while (take < order.size() && take < room && covered < excess) {
      covered += nodes[order[take]].est.error;
      ++take;
    }
    take = std::max<std::size_t>(take, 1);

    std::vector<Cell> children(2 * take);
    for (std::size_t k = 0; k < take; ++k) {
      const auto& parent = nodes[order[k]];
      auto [a, b] = split(parent.cell, parent.est);
      children[2 * k] = a;
      children[2 * k + 1] = b;
    }
    std::vector<Estimate> child_est(children.size());
    parallel_for(children.size(), cfg.workers,
                 [&](std::size_t i) { child_est[i] = eval(children[i]); });
    for (std::size_t k = 0; k < take; ++k) {
      nodes[order[k]] = Node<Cell>{children[2 * k], child_est[2 * k]};
      nodes.push_back(Node<Cell>{children[2 * k + 1], child_est[2 * k + 1]});
    }
  }
}

// Evaluates f, mapping flagged singularities according to the edge rule.
template <typename F>
double guarded(F&& f, bool on_edge, const char* where) {
  double y = 0.0;
  try {
    y = f();
  } catch (const SingularInput& e) {
    if (on_edge) {
      return 0.0;
    }
    throw PropagatedSingularity(std::string(where) + ": " + e.what());
  }
  if (!std::isfinite(y)) {
    if (on_edge) {
      return 0.0;
    }
    throw PropagatedSingularity(std::string(where) + ": integrand returned a non-finite value");
  }
  return y;
}

// ---------------------------------------------------------------- interval

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

Estimate eval_interval(const Integrand1D& f, const Interval& c, double lo, double hi) {
  const double h = c.b - c.a;
  double k = 0.0;
  double g = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < kN; ++i) {
    const double t = c.a + h * kRule.node[i];
    const double y = guarded([&] { return f(t); }, t <= lo || t >= hi, "integrate_interval");
    k += kRule.kronrod[i] * y;
    g += kRule.gauss[i] * y;
    abs_sum += kRule.kronrod[i] * std::abs(y);
  }
  return Estimate{k * h, std::abs(k - g) * std::abs(h), kRoundoffFactor * abs_sum * std::abs(h), true};
}

// ---------------------------------------------------------- graded square

struct Rect {
  double w0 = 0.0;
  double w1 = 1.0;
  double z0 = 0.0;
  double z1 = 1.0;
};

Estimate eval_rect(const Integrand2D& f, const Rect& c, double T, double grading) {
  const double hw = c.w1 - c.w0;
  const double hz = c.z1 - c.z0;
  std::array<double, kN * kN> y{};
  for (std::size_t i = 0; i < kN; ++i) {
    const double w = c.w0 + hw * kRule.node[i];
    const double tau = T * std::pow(w, grading);
    const double jac = T * grading * std::pow(w, grading - 1.0) * (T - tau);
    for (std::size_t j = 0; j < kN; ++j) {
      const double z = c.z0 + hz * kRule.node[j];
      const double u = z * (T - tau);
      const double v = std::min(u + tau, T);
      y[i * kN + j] =
          jac * guarded([&] { return f(u, v); }, v == u, "integrate_triangle");
    }
  }
  double kk = 0.0;
  double gk = 0.0;
  double kg = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < kN; ++i) {
    double row_k = 0.0;
    double row_g = 0.0;
    double row_abs = 0.0;
    for (std::size_t j = 0; j < kN; ++j) {
      row_k += kRule.kronrod[j] * y[i * kN + j];
      row_g += kRule.gauss[j] * y[i * kN + j];
      row_abs += kRule.kronrod[j] * std::abs(y[i * kN + j]);
    }
    kk += kRule.kronrod[i] * row_k;
    gk += kRule.gauss[i] * row_k;
    kg += kRule.kronrod[i] * row_g;
    abs_sum += kRule.kronrod[i] * row_abs;
  }
  const double area = hw * hz;
  const double err_w = std::abs(kk - gk) * area;
  const double err_z = std::abs(kk - kg) * area;
  return Estimate{kk * area, err_w + err_z, kRoundoffFactor * abs_sum * area, err_w >= err_z};
}

std::pair<Rect, Rect> split_rect(const Rect& c, const Estimate& e) {
  if (e.split_first) {
    const double m = 0.5 * (c.w0 + c.w1);
    return {Rect{c.w0, m, c.z0, c.z1}, Rect{m, c.w1, c.z0, c.z1}};
  }
  const double m = 0.5 * (c.z0 + c.z1);
  return {Rect{c.w0, c.w1, c.z0, m}, Rect{c.w0, c.w1, m, c.z1}};
}

// ------------------------------------------------------- simplex bisection

struct Point {
  double u = 0.0;
  double v = 0.0;
};

struct Tri {
  std::array<Point, 3> p{};
};

double dist2(const Point& a, const Point& b) {
  return (a.u - b.u) * (a.u - b.u) + (a.v - b.v) * (a.v - b.v);
}

bool on_diagonal(const Point& p, double T) { return std::abs(p.v - p.u) <= 1e-14 * T; }

// Collapsed Gauss-Kronrod rule with apex p[0]. Cells with an edge on v = u
// put the apex opposite that edge and grade s toward it; cells touching the
// diagonal in one vertex put the apex there and grade s toward 0.
Estimate eval_tri(const Integrand2D& f, const Tri& c, double T, double grading) {
  std::array<Point, 3> q = c.p;
  int touching = 0;
  for (const auto& p : q) {
    touching += on_diagonal(p, T) ? 1 : 0;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    if ((touching == 2 && !on_diagonal(q[k], T)) || (touching == 1 && on_diagonal(q[k], T))) {
      std::swap(q[0], q[k]);
      break;
    }
  }
  const Point& p0 = q[0];
  const Point e1{q[1].u - p0.u, q[1].v - p0.v};
  const Point e2{q[2].u - q[1].u, q[2].v - q[1].v};
  const double det = std::abs(e1.u * e2.v - e1.v * e2.u);
  double kk = 0.0;
  double gg = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < kN; ++i) {
    const double x = kRule.node[i];
    double s = x;
    double jac = 1.0;
    if (touching == 2) {
      s = 1.0 - std::pow(1.0 - x, grading);
      jac = grading * std::pow(1.0 - x, grading - 1.0);
    } else if (touching == 1) {
      s = std::pow(x, grading);
      jac = grading * std::pow(x, grading - 1.0);
    }
    double row_k = 0.0;
    double row_g = 0.0;
    double row_abs = 0.0;
    for (std::size_t j = 0; j < kN; ++j) {
      const double t = kRule.node[j];
      const double u = p0.u + s * e1.u + s * t * e2.u;
      const double v = p0.v + s * e1.v + s * t * e2.v;
      const double y = guarded([&] { return f(u, v); }, v <= u, "integrate_triangle");
      row_k += kRule.kronrod[j] * y;
      row_g += kRule.gauss[j] * y;
      row_abs += kRule.kronrod[j] * std::abs(y);
    }
    kk += kRule.kronrod[i] * s * jac * row_k;
    gg += kRule.gauss[i] * s * jac * row_g;
    abs_sum += kRule.kronrod[i] * s * jac * row_abs;
  }
  return Estimate{kk * det, std::abs(kk - gg) * det, kRoundoffFactor * abs_sum * det, true};
}

std::pair<Tri, Tri> split_tri(const Tri& c, const Estimate&) {
  // Longest edge (a, b) with opposite vertex o; ties resolved by edge order.
  std::size_t o = 2;
  double best = dist2(c.p[0], c.p[1]);
  for (std::size_t k = 0; k < 2; ++k) {
    const double d = dist2(c.p[(k + 1) % 3], c.p[(k + 2) % 3]);
    if (d > best) {
      best = d;
      o = k;
    }
  }
  const Point& a = c.p[(o + 1) % 3];
  const Point& b = c.p[(o + 2) % 3];
  const Point m{0.5 * (a.u + b.u), 0.5 * (a.v + b.v)};
  return {Tri{{c.p[o], a, m}}, Tri{{c.p[o], m, b}}};
}

// The whole triangle, bisected twice. Later bisection keeps every vertex
// either exactly on v = u or a cell diameter away from it, so no cell hugs
// the edge without being graded toward it.
std::vector<Tri> initial_triangles(double T) {
  std::vector<Tri> tris{Tri{{Point{0.0, T}, Point{0.0, 0.0}, Point{T, T}}}};
  for (int round = 0; round < 2; ++round) {
    std::vector<Tri> next;
    for (const auto& t : tris) {
      auto [a, b] = split_tri(t, Estimate{});
      next.push_back(a);
      next.push_back(b);
    }
    tris = std::move(next);
  }
  return tris;
}

}  // namespace

QuadratureResult integrate_interval(const Integrand1D& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_interval requires finite a <= b");
  }
  if (a == b) {
    return QuadratureResult{0.0, 0.0, 0, true};
  }
  return refine(
      std::vector<Interval>{Interval{a, b}},
      [&](const Interval& c) { return eval_interval(f, c, a, b); },
      [](const Interval& c, const Estimate&) {
        const double m = 0.5 * (c.a + c.b);
        return std::pair{Interval{c.a, m}, Interval{m, c.b}};
      },
      cfg);
}

QuadratureResult integrate_triangle(const Integrand2D& f, double T, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("integrate_triangle requires finite T > 0");
  }
  if (cfg.scheme == TriangleScheme::simplex_bisection) {
    return refine(
        initial_triangles(T),
        [&](const Tri& c) { return eval_tri(f, c, T, 3.0 * cfg.edge_grading); },
        split_tri, cfg);
  }
  // Four initial columns in w so the first refinement rounds already see
  // the edge region separately.
  std::vector<Rect> initial;
  for (int k = 0; k < 4; ++k) {
    initial.push_back(Rect{k / 4.0, (k + 1) / 4.0, 0.0, 1.0});
  }
  const double grading = cfg.edge_grading;
  return refine(
      std::move(initial), [&](const Rect& c) { return eval_rect(f, c, T, grading); }, split_rect,
      cfg);
}

}  // namespace slt

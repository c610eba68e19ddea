#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/poly.hpp"
#include "opnorm/quadrature.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

using RVec = std::vector<double>;
using MultiIndex = std::vector<int>;

inline int multi_order(const MultiIndex& a) {
  int s = 0;
  for (int k : a) s += k;
  return s;
}

/// All multi-indices in `dim` variables with total order <= max_total.
inline std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, int max_total) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int budget) {
    if (pos == dim) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      cur[pos] = k;
      rec(pos + 1, budget - k);
    }
    cur[pos] = 0;
  };
  rec(0, max_total);
  return out;
}

/// Axis-aligned box; the support carrier for compactly supported functions.
struct Box {
  RVec lo, hi;

  std::size_t dim() const noexcept { return lo.size(); }

  bool contains(const RVec& x, double slack = 0.0) const {
    for (std::size_t d = 0; d < lo.size(); ++d)
      if (x[d] < lo[d] - slack || x[d] > hi[d] + slack) return false;
    return true;
  }

  double width(std::size_t d) const { return hi[d] - lo[d]; }
};

inline Box box1d(double lo, double hi) { return Box{{lo}, {hi}}; }

inline Box box_union(const Box& a, const Box& b) {
  Box r = a;
  for (std::size_t d = 0; d < r.dim(); ++d) {
    r.lo[d] = std::min(r.lo[d], b.lo[d]);
    r.hi[d] = std::max(r.hi[d], b.hi[d]);
  }
  return r;
}

inline std::optional<Box> box_intersection(const Box& a, const Box& b) {
  Box r = a;
  for (std::size_t d = 0; d < r.dim(); ++d) {
    r.lo[d] = std::max(r.lo[d], b.lo[d]);
    r.hi[d] = std::min(r.hi[d], b.hi[d]);
    if (r.lo[d] > r.hi[d]) return std::nullopt;
  }
  return r;
}

/// Smooth function with a derivative oracle valid up to `max_order`.
/// A missing support box marks a rapidly decreasing function.
struct TestFunction {
  std::size_t dim = 1;
  int max_order = 0;
  std::function<Scalar(const MultiIndex&, const RVec&)> deriv;  // order 0 included
  std::optional<Box> support;

  Scalar eval(const RVec& x) const { return deriv(MultiIndex(dim, 0), x); }
  bool rapidly_decreasing() const noexcept { return !support.has_value(); }
};

// ---------------------------------------------------------------------------
// Canonical bump: g(u) = exp(-1/(1-u^2)) on (-1,1). The j-th derivative is
// P_j(u) (1-u^2)^{-2j} g(u) with the polynomial recurrence
//   P_{j+1} = P_j' (1-u^2)^2 + (4 j u (1-u^2) - 2u) P_j,   P_0 = 1.
// ---------------------------------------------------------------------------

inline constexpr int kMaxBumpOrder = 48;

inline const Poly& bump_poly(int j) {
  static const std::vector<Poly> cache = [] {
    std::vector<Poly> c;
    c.push_back(Poly{1.0});
    const Poly s{1.0, 0.0, -1.0};  // 1 - u^2
    const Poly s2 = s * s;
    for (int n = 0; n < kMaxBumpOrder; ++n) {
      const Poly factor = Poly{0.0, 4.0 * n} * s + Poly{0.0, -2.0};
      c.push_back(derivative(c[static_cast<std::size_t>(n)]) * s2 +
                  factor * c[static_cast<std::size_t>(n)]);
    }
    return c;
  }();
  return cache[static_cast<std::size_t>(j)];
}

/// j-th derivative of the canonical 1-d bump at u, evaluated in log space so
/// the (1-u^2)^{-2j} blowup near the support edge cannot produce 0 * inf.
inline double bump1d_deriv(int j, double u) {
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  const double expo = -1.0 / s - 2.0 * static_cast<double>(j) * std::log(s);
  if (expo < -700.0) return 0.0;
  return bump_poly(j)(u) * std::exp(expo);
}

/// Mass of the canonical bump, used by the smooth step.
inline double bump_mass() {
  static const double m =
      integrate_real([](double u) { return bump1d_deriv(0, u); }, -1.0, 1.0,
                     QuadOptions{1e-14, 4000000})
          .real();
  return m;
}

/// Smooth step: 0 for u <= -1, 1 for u >= 1, normalized bump integral between.
inline double smooth_step(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return integrate_real([](double v) { return bump1d_deriv(0, v); }, -1.0, u,
                        QuadOptions{1e-13, 4000000})
             .real() /
         bump_mass();
}

struct BumpFamily {
  RVec center{0.0};
  double radius = 1.0;
  Scalar amplitude{1.0, 0.0};
};

/// Canonical radial bump amp * exp(-1/(1 - ||(x-c)/r||^2)). One-dimensional
/// bumps carry the full-order recurrence oracle; in higher dimensions the
/// radial oracle is declared up to order 2 (use product_bump for full-order
/// multi-dimensional work).
inline TestFunction bump_function(const BumpFamily& fam) {
  if (!(fam.radius > 0.0)) fail(errc::config_invalid, "bump radius must be positive");
  TestFunction f;
  f.dim = fam.center.size();
  Box sup;
  for (double c : fam.center) {
    sup.lo.push_back(c - fam.radius);
    sup.hi.push_back(c + fam.radius);
  }
  f.support = sup;

  if (f.dim == 1) {
    f.max_order = kMaxBumpOrder;
    const double c = fam.center[0], r = fam.radius;
    const Scalar amp = fam.amplitude;
    f.deriv = [c, r, amp](const MultiIndex& a, const RVec& x) {
      const int j = a[0];
      return amp * std::pow(1.0 / r, j) * bump1d_deriv(j, (x[0] - c) / r);
    };
    return f;
  }

  f.max_order = 2;
  const RVec c = fam.center;
  const double r = fam.radius;
  const Scalar amp = fam.amplitude;
  f.deriv = [c, r, amp](const MultiIndex& a, const RVec& x) -> Scalar {
    double s = 0.0;
    std::vector<double> u(c.size());
    for (std::size_t d = 0; d < c.size(); ++d) {
      u[d] = (x[d] - c[d]) / r;
      s += u[d] * u[d];
    }
    if (s >= 1.0) return {0.0, 0.0};
    const double h = std::exp(-1.0 / (1.0 - s));
    const int order = multi_order(a);
    if (order == 0) return amp * h;
    const double om = 1.0 - s;
    const double h1 = -h / (om * om);  // dH/ds
    if (order == 1) {
      std::size_t i = 0;
      while (a[i] == 0) ++i;
      return amp * h1 * (2.0 * u[i] / r);
    }
    if (order == 2) {
      const double h2 = h * (1.0 / (om * om * om * om) - 2.0 / (om * om * om));
      std::size_t i = 0;
      while (a[i] == 0) ++i;
      if (a[i] == 2) return amp * (h2 * (2.0 * u[i] / r) * (2.0 * u[i] / r) + h1 * 2.0 / (r * r));
      std::size_t j = i + 1;
      while (a[j] == 0) ++j;
      return amp * h2 * (2.0 * u[i] / r) * (2.0 * u[j] / r);
    }
    fail(errc::order_exceeds_oracle, "radial bump oracle is declared up to order 2 for dim > 1");
  };
  return f;
}

/// Tensor product of 1-d canonical bumps; full-order oracle in any dimension.
inline TestFunction product_bump(const RVec& center, const RVec& radii, Scalar amplitude) {
  if (center.size() != radii.size()) fail(errc::config_invalid, "center/radius size mismatch");
  TestFunction f;
  f.dim = center.size();
  f.max_order = kMaxBumpOrder;
  Box sup;
  for (std::size_t d = 0; d < center.size(); ++d) {
    if (!(radii[d] > 0.0)) fail(errc::config_invalid, "radii must be positive");
    sup.lo.push_back(center[d] - radii[d]);
    sup.hi.push_back(center[d] + radii[d]);
  }
  f.support = sup;
  f.deriv = [center, radii, amplitude](const MultiIndex& a, const RVec& x) -> Scalar {
    double prod = 1.0;
    for (std::size_t d = 0; d < center.size(); ++d) {
      prod *= std::pow(1.0 / radii[d], a[d]) * bump1d_deriv(a[d], (x[d] - center[d]) / radii[d]);
      if (prod == 0.0) return {0.0, 0.0};
    }
    return amplitude * prod;
  };
  return f;
}

/// Smooth plateau: exactly 1 on [l, r], smooth ramps of width w on both
/// sides, support [l - w, r + w]. Derivatives are closed forms through the
/// step derivatives S^(m) = g^(m-1)/mass.
inline TestFunction plateau_function(double l, double r, double w, int max_order = 40) {
  if (!(w > 0.0) || !(r >= l)) fail(errc::config_invalid, "plateau needs w > 0 and r >= l");
  TestFunction f;
  f.dim = 1;
  f.max_order = max_order;
  f.support = box1d(l - w, r + w);
  const double mass = bump_mass();
  auto step_d = [mass](int m, double u) -> double {
    if (m == 0) return smooth_step(u);
    if (std::abs(u) >= 1.0) return 0.0;
    return bump1d_deriv(m - 1, u) / mass;
  };
  f.deriv = [l, r, w, step_d](const MultiIndex& a, const RVec& x) -> Scalar {
    const int k = a[0];
    const double aL = 2.0 / w, aR = -2.0 / w;
    const double uL = (2.0 * x[0] - 2.0 * l + w) / w;
    const double uR = (-2.0 * x[0] + 2.0 * r + w) / w;
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      sum += binom * std::pow(aL, j) * step_d(j, uL) * std::pow(aR, k - j) * step_d(k - j, uR);
      binom = binom * (k - j) / (j + 1.0);
    }
    return {sum, 0.0};
  };
  return f;
}

/// f(x) = P(x) exp(Q(x)) with P, Q polynomials; closed under differentiation
/// via P -> P' + P Q'. Gaussians and Hermite-type rapidly decreasing
/// functions live here.
inline TestFunction poly_exp_function(const Poly& p, const Poly& q, int max_order = 40) {
  TestFunction f;
  f.dim = 1;
  f.max_order = max_order;
  f.support = std::nullopt;  // rapidly decreasing
  auto chain = std::make_shared<std::vector<Poly>>();
  chain->push_back(p);
  const Poly dq = derivative(q);
  for (int j = 0; j < max_order; ++j)
    chain->push_back(derivative(chain->back()) + chain->back() * dq);
  f.deriv = [chain, q](const MultiIndex& a, const RVec& x) -> Scalar {
    const double e = q(x[0]);
    if (e < -700.0) return {0.0, 0.0};
    return {(*chain)[static_cast<std::size_t>(a[0])](x[0]) * std::exp(e), 0.0};
  };
  return f;
}

inline TestFunction gaussian_function(double scale = 1.0) {
  // exp(-(scale x)^2 / 2)
  return poly_exp_function(Poly{1.0}, Poly{0.0, 0.0, -0.5 * scale * scale});
}

inline TestFunction zero_test_function(std::size_t dim) {
  TestFunction f;
  f.dim = dim;
  f.max_order = kMaxBumpOrder;
  f.support = Box{RVec(dim, 0.0), RVec(dim, 0.0)};
  f.deriv = [](const MultiIndex&, const RVec&) { return Scalar{0.0, 0.0}; };
  return f;
}

inline TestFunction tf_lin_comb(Scalar a, const TestFunction& f, Scalar b,
                                const TestFunction& g) {
  if (f.dim != g.dim) fail(errc::space_mismatch, "test functions of different dimension");
  TestFunction h;
  h.dim = f.dim;
  h.max_order = std::min(f.max_order, g.max_order);
  if (f.support && g.support)
    h.support = box_union(*f.support, *g.support);
  else
    h.support = std::nullopt;
  auto fd = f.deriv, gd = g.deriv;
  h.deriv = [a, b, fd, gd](const MultiIndex& al, const RVec& x) {
    return a * fd(al, x) + b * gd(al, x);
  };
  return h;
}

inline TestFunction operator+(const TestFunction& f, const TestFunction& g) {
  return tf_lin_comb({1.0, 0.0}, f, {1.0, 0.0}, g);
}
inline TestFunction operator-(const TestFunction& f, const TestFunction& g) {
  return tf_lin_comb({1.0, 0.0}, f, {-1.0, 0.0}, g);
}
inline TestFunction operator*(Scalar a, const TestFunction& f) {
  return tf_lin_comb(a, f, {0.0, 0.0}, f);
}
inline TestFunction operator*(double a, const TestFunction& f) {
  return Scalar{a, 0.0} * f;
}

/// Multiply a 1-d test function by a polynomial (Leibniz oracle).
inline TestFunction tf_poly_mul(const Poly& m, const TestFunction& f) {
  if (f.dim != 1) fail(errc::config_invalid, "tf_poly_mul is one-dimensional");
  TestFunction h = f;
  auto polys = std::make_shared<std::vector<Poly>>();
  polys->push_back(m);
  for (int j = 0; j < f.max_order; ++j) polys->push_back(derivative(polys->back()));
  auto fd = f.deriv;
  h.deriv = [polys, fd](const MultiIndex& a, const RVec& x) -> Scalar {
    const int k = a[0];
    Scalar sum{0.0, 0.0};
    double binom = 1.0;
    for (int j = 0; j <= k && j < static_cast<int>(polys->size()); ++j) {
      sum += binom * (*polys)[static_cast<std::size_t>(j)](x[0]) *
             fd(MultiIndex{k - j}, x);
      binom = binom * (k - j) / (j + 1.0);
    }
    return sum;
  };
  return h;
}

/// The alpha-th derivative of f as a TestFunction (oracle index shift).
inline TestFunction tf_derivative(const TestFunction& f, const MultiIndex& alpha) {
  const int shift = multi_order(alpha);
  if (shift > f.max_order) fail(errc::order_exceeds_oracle, "derivative order beyond the oracle");
  TestFunction h = f;
  h.max_order = f.max_order - shift;
  auto fd = f.deriv;
  h.deriv = [fd, alpha](const MultiIndex& a, const RVec& x) {
    MultiIndex b = a;
    for (std::size_t d = 0; d < b.size(); ++d) b[d] += alpha[d];
    return fd(b, x);
  };
  return h;
}

// ---------------------------------------------------------------------------
// Seminorms and the Frechet metrics of Example 1.
// ---------------------------------------------------------------------------

struct FrechetMetricParams {
  double a = 2.0;  // series base, > 1
  double b = 1.0;  // denominator offset, > 0
  int N = 2;
  int truncation = 30;         // I
  Box omega = box1d(-4.0, 4.0);
  std::vector<Box> exhaustion;  // K_0 .. K_truncation, nested
  bool whole_domain = false;    // the d_{D(Omega)} variant: p_i over Omega
  double grid_density = 32.0;   // points per unit length
};

inline int default_truncation(double a) {
  return static_cast<int>(std::ceil(std::log(1e-9 * (a - 1.0)) / std::log(1.0 / a)));
}

inline double series_tail_bound(double a, int truncation) {
  return std::pow(a, -truncation) / (a - 1.0);
}

/// Nested boxes growing linearly toward omega; K_0 starts at half size.
inline std::vector<Box> make_exhaustion(const Box& omega, int count) {
  std::vector<Box> ks;
  for (int i = 0; i <= count; ++i) {
    const double frac = 0.5 + 0.5 * static_cast<double>(i + 1) / static_cast<double>(count + 2);
    Box k;
    for (std::size_t d = 0; d < omega.dim(); ++d) {
      const double mid = 0.5 * (omega.lo[d] + omega.hi[d]);
      const double half = 0.5 * omega.width(d) * frac;
      k.lo.push_back(mid - half);
      k.hi.push_back(mid + half);
    }
    ks.push_back(k);
  }
  return ks;
}

inline FrechetMetricParams make_frechet_params(double a, double b, int N, Box omega,
                                               int truncation = -1, double grid_density = 32.0,
                                               bool whole_domain = false) {
  if (!(a > 1.0)) fail(errc::config_invalid, "Frechet metric needs a > 1");
  if (!(b > 0.0)) fail(errc::config_invalid, "Frechet metric needs b > 0");
  if (N < 1) fail(errc::config_invalid, "N must be a positive integer");
  FrechetMetricParams p;
  p.a = a;
  p.b = b;
  p.N = N;
  p.truncation = truncation > 0 ? truncation : default_truncation(a);
  if (p.truncation < N) p.truncation = N;
  p.omega = omega;
  p.exhaustion = make_exhaustion(omega, p.truncation);
  p.grid_density = grid_density;
  p.whole_domain = whole_domain;
  return p;
}

/// Rectangular grid at `density` points per unit length per axis, endpoints
/// included, plus any extra points lying inside the box.
inline std::vector<RVec> grid_over_box(const Box& box, double density,
                                       const std::vector<RVec>& extra = {}) {
  std::vector<std::vector<double>> axes;
  for (std::size_t d = 0; d < box.dim(); ++d) {
    const double w = box.width(d);
    const int count = std::max(2, static_cast<int>(std::ceil(w * density)) + 1);
    std::vector<double> ax;
    for (int i = 0; i < count; ++i)
      ax.push_back(box.lo[d] + w * static_cast<double>(i) / static_cast<double>(count - 1));
    axes.push_back(std::move(ax));
  }
  std::vector<RVec> pts;
  RVec cur(box.dim(), 0.0);
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == box.dim()) {
      pts.push_back(cur);
      return;
    }
    for (double v : axes[d]) {
      cur[d] = v;
      rec(d + 1);
    }
  };
  rec(0);
  for (const auto& x : extra)
    if (box.contains(x)) pts.push_back(x);
  return pts;
}

/// Refinement points across the support of f inside `region`, so that narrow
/// functions are resolved regardless of the coarse grid density.
inline std::vector<RVec> support_refinement(const TestFunction& f, const Box& region,
                                            int per_axis = 129) {
  std::vector<RVec> extra;
  if (!f.support) return extra;
  const auto inter = box_intersection(*f.support, region);
  if (!inter) return extra;
  if (f.dim == 1) {
    const double w = inter->width(0);
    for (int i = 0; i < per_axis; ++i)
      extra.push_back({inter->lo[0] + w * static_cast<double>(i) / (per_axis - 1)});
    return extra;
  }
  return grid_over_box(*inter, (per_axis - 1) / std::max(1e-12, inter->width(0)));
}

inline const Box& exhaustion_box(const FrechetMetricParams& params, int i) {
  const int idx = std::clamp(i, 0, static_cast<int>(params.exhaustion.size()) - 1);
  return params.exhaustion[static_cast<std::size_t>(idx)];
}

/// p_i(f): grid maximum over K_i (or omega in the whole-domain variant) of
/// all derivative magnitudes with |alpha| <= i. A lower bound of the true
/// maximum; pass `extra` points to pin values the caller needs covered.
inline double seminorm_p_i(const TestFunction& f, int i, const FrechetMetricParams& params,
                           const std::vector<RVec>& extra = {}) {
  if (i > f.max_order) fail(errc::order_exceeds_oracle, "seminorm order beyond the oracle");
  const Box& region = params.whole_domain ? params.omega : exhaustion_box(params, i);
  std::vector<RVec> pts = grid_over_box(region, params.grid_density, extra);
  for (auto& x : support_refinement(f, region)) pts.push_back(std::move(x));

  double best = 0.0;
  for (const auto& alpha : multi_indices_up_to(f.dim, i))
    for (const auto& x : pts) best = std::max(best, std::abs(f.deriv(alpha, x)));
  return best;
}

/// Certified upper bound of sup |f^(j)| over the region (one-dimensional):
/// grid max plus a mean-value correction chained through three more orders.
inline double seminorm_p_i_upper(const TestFunction& f, int i, const FrechetMetricParams& params,
                                 const std::vector<RVec>& extra = {}) {
  if (f.dim != 1) fail(errc::config_invalid, "upper seminorm bound is one-dimensional");
  if (i + 3 > f.max_order)
    fail(errc::order_exceeds_oracle, "upper bound needs three orders of headroom");
  const Box& region = params.whole_domain ? params.omega : exhaustion_box(params, i);
  std::vector<RVec> pts = grid_over_box(region, params.grid_density, extra);
  for (auto& x : support_refinement(f, region, 257)) pts.push_back(std::move(x));
  std::sort(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) { return a[0] < b[0]; });
  // For compactly supported f the sup lives inside the support, so only the
  // mesh gap there enters the mean-value correction.
  double h = 0.0;
  const auto inside = [&](double x) {
    return !f.support || (x >= f.support->lo[0] - 1e-15 && x <= f.support->hi[0] + 1e-15);
  };
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (inside(pts[k][0]) && inside(pts[k - 1][0])) h = std::max(h, pts[k][0] - pts[k - 1][0]);

  std::vector<double> grid_max(static_cast<std::size_t>(i) + 4, 0.0);
  for (int j = 0; j <= i + 3; ++j)
    for (const auto& x : pts)
      grid_max[static_cast<std::size_t>(j)] =
          std::max(grid_max[static_cast<std::size_t>(j)], std::abs(f.deriv(MultiIndex{j}, x)));

  double best = 0.0;
  for (int j = 0; j <= i; ++j) {
    double bound = 2.0 * grid_max[static_cast<std::size_t>(j) + 3];
    for (int m = j + 2; m >= j; --m)
      bound = grid_max[static_cast<std::size_t>(m)] + 0.5 * h * bound;
    best = std::max(best, bound);
  }
  return best;
}

/// The truncated series sum_{i=1}^{I} a^{-i} v_i / (b + v_i) over given
/// seminorm values v_1..v_I.
inline double frechet_series(const std::vector<double>& values, double a, double b) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    s += std::pow(a, -static_cast<double>(i + 1)) * values[i] / (b + values[i]);
  return s;
}

struct FrechetValue {
  double value = 0.0;       // max(series, p_N)
  double series = 0.0;      // truncated series
  double p_N = 0.0;
  double tail_bound = 0.0;  // a^{-I}/(a-1), reported, not added
  int truncation = 0;
};

/// d_{C-infinity}(f, g) (or the d_{D(Omega)} variant): the truncated-series
/// value with the geometric tail bound attached. The metric depends on f - g
/// only, so translation invariance is exact by construction.
inline FrechetValue frechet_metric(const TestFunction& f, const TestFunction& g,
                                   const FrechetMetricParams& params,
                                   const std::vector<RVec>& extra = {}) {
  const TestFunction h = f - g;
  if (params.truncation > h.max_order || params.N > h.max_order)
    fail(errc::order_exceeds_oracle, "metric orders exceed the derivative oracle");
  std::vector<double> vals;
  for (int i = 1; i <= params.truncation; ++i) vals.push_back(seminorm_p_i(h, i, params, extra));
  FrechetValue out;
  out.series = frechet_series(vals, params.a, params.b);
  out.p_N = seminorm_p_i(h, params.N, params, extra);
  out.value = std::max(out.series, out.p_N);
  out.tail_bound = series_tail_bound(params.a, params.truncation);
  out.truncation = params.truncation;
  return out;
}

/// Certified upper bound of the exact metric value d(f, g): upper seminorms
/// in every series term plus the full tail, against the upper p_N.
inline double frechet_metric_upper(const TestFunction& f, const TestFunction& g,
                                   const FrechetMetricParams& params,
                                   const std::vector<RVec>& extra = {}) {
  const TestFunction h = f - g;
  std::vector<double> vals;
  for (int i = 1; i <= params.truncation; ++i)
    vals.push_back(seminorm_p_i_upper(h, i, params, extra));
  const double series = frechet_series(vals, params.a, params.b) +
                        series_tail_bound(params.a, params.truncation);
  return std::max(series, seminorm_p_i_upper(h, params.N, params, extra));
}

// ---------------------------------------------------------------------------
// Schwartz-type seminorms and the Example 3(b) metric.
// ---------------------------------------------------------------------------

/// ||f||_k = sup_{|alpha| <= k} sup_x (1 + ||x||^2)^k |f^(alpha)(x)| on the
/// given 1-d grid. GridTooSmall when the weighted envelope at the grid
/// boundary is not below 1e-12 of the interior maximum.
inline double schwartz_seminorm(const TestFunction& f, int k, const std::vector<double>& grid,
                                double decay_tol = 1e-12) {
  if (f.dim != 1) fail(errc::config_invalid, "schwartz_seminorm is one-dimensional here");
  if (k > f.max_order) fail(errc::order_exceeds_oracle, "seminorm order beyond the oracle");
  if (grid.size() < 3) fail(errc::grid_too_small, "need at least 3 grid points");
  double best = 0.0, boundary = 0.0;
  for (int j = 0; j <= k; ++j) {
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const double x = grid[idx];
      const double w = std::pow(1.0 + x * x, k);
      const double v = w * std::abs(f.deriv(MultiIndex{j}, {x}));
      best = std::max(best, v);
      if (idx == 0 || idx + 1 == grid.size()) boundary = std::max(boundary, v);
    }
  }
  if (best > 0.0 && boundary > decay_tol * best)
    fail(errc::grid_too_small, "weighted envelope at the grid boundary has not decayed");
  return best;
}

inline std::vector<double> uniform_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i)
    g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return g;
}

/// Doubles the half-width until the boundary-decay condition holds. The
/// boundary probe uses only the cheap order-0 envelope; the caller's full
/// seminorm evaluation re-verifies the condition across all orders.
inline std::vector<double> schwartz_auto_grid(const TestFunction& f, int k,
                                              double density = 8.0, double half_width = 8.0,
                                              int max_doublings = 7, double decay_tol = 1e-12) {
  for (int attempt = 0; attempt <= max_doublings; ++attempt) {
    const int count = std::max(9, static_cast<int>(2.0 * half_width * density) + 1);
    auto grid = uniform_grid(-half_width, half_width, count);
    double interior = 0.0, boundary = 0.0;
    for (int j = 0; j <= k; ++j) {
      for (double x : {0.0, 0.5, 1.0, -0.5, -1.0, 2.0, -2.0})
        interior = std::max(interior, std::pow(1.0 + x * x, k) *
                                          std::abs(f.deriv(MultiIndex{j}, {x})));
      const double wb = std::pow(1.0 + half_width * half_width, k);
      for (double x : {half_width, -half_width})
        boundary = std::max(boundary, wb * std::abs(f.deriv(MultiIndex{j}, {x})));
    }
    if (interior == 0.0 || boundary <= decay_tol * interior) return grid;
    half_width *= 2.0;
  }
  fail(errc::grid_too_small, "decay condition unmet after all doublings");
}

struct SchwartzMetricParams {
  double a = 1.0;  // denominator offset, > 0
  double b = 2.0;  // series base, > 1
  int N = 1;
  int truncation = 30;
  double grid_density = 8.0;
};

inline SchwartzMetricParams make_schwartz_params(double a, double b, int N,
                                                 int truncation = -1) {
  if (!(a > 0.0)) fail(errc::config_invalid, "Schwartz metric needs a > 0");
  if (!(b > 1.0)) fail(errc::config_invalid, "Schwartz metric needs b > 1");
  if (N < 1) fail(errc::config_invalid, "N must be a positive integer");
  SchwartzMetricParams p;
  p.a = a;
  p.b = b;
  p.N = N;
  p.truncation = truncation > 0 ? truncation : default_truncation(b);
  if (p.truncation < N) p.truncation = N;
  return p;
}

/// Example 3(b) metric: max(sum_{k=0}^{I} b^{-k} ||f-g||_k / (a + ||f-g||_k),
/// ||f-g||_N), tail bound b^{-I}/(b-1) reported separately.
inline FrechetValue schwartz_metric(const TestFunction& f, const TestFunction& g,
                                    const SchwartzMetricParams& params) {
  const TestFunction h = f - g;
  if (params.truncation > h.max_order)
    fail(errc::order_exceeds_oracle, "metric orders exceed the derivative oracle");
  FrechetValue out;
  double series = 0.0;
  for (int k = 0; k <= params.truncation; ++k) {
    const double v = schwartz_seminorm(h, k, schwartz_auto_grid(h, k, params.grid_density));
    series += std::pow(params.b, -static_cast<double>(k)) * v / (params.a + v);
    if (k == params.N) out.p_N = v;
  }
  out.series = series;
  out.value = std::max(series, out.p_N);
  out.tail_bound = series_tail_bound(params.b, params.truncation);
  out.truncation = params.truncation;
  return out;
}

}  // namespace opnorm

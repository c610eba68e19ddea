#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/quadrature.hpp"
#include "opnorm/testfn.hpp"

namespace opnorm {

/// Absolutely integrable function with a declared quadrature window: the
/// tail mass outside [-window, window] must be below 1e-8 of the L1 norm.
struct IntegrableFunction {
  std::function<Scalar(double)> eval;  // one-dimensional carrier
  double window = 12.0;
  QuadOptions quad{1e-10, 400000};
  double l1_norm = 0.0;
  double l1_error = 0.0;
};

inline IntegrableFunction make_integrable(std::function<Scalar(double)> fn, double window,
                                          QuadOptions quad = {1e-10, 400000}) {
  IntegrableFunction f;
  f.eval = std::move(fn);
  f.window = window;
  f.quad = quad;
  auto e = f.eval;
  const auto res =
      integrate_real([e](double x) { return std::abs(e(x)); }, -window, window, quad);
  f.l1_norm = res.real();
  f.l1_error = res.error_bound;
  return f;
}

struct SpectrumSample {
  std::vector<double> t_grid;
  std::vector<Scalar> values;
  std::vector<double> err_bounds;
  double sup_abs = 0.0;
};

/// f_hat(t) = (2 pi)^{-1/2} integral of f e^{-i t x} dx, per grid frequency,
/// with the quadrature error bound recorded per entry.
inline SpectrumSample fourier_transform(const IntegrableFunction& f,
                                        const std::vector<double>& t_grid) {
  SpectrumSample s;
  s.t_grid = t_grid;
  const double scale = 1.0 / std::sqrt(2.0 * 3.14159265358979323846264338327950288);
  auto e = f.eval;
  for (double t : t_grid) {
    const auto res = integrate(
        [e, t](double x) {
          return e(x) * Scalar{std::cos(t * x), -std::sin(t * x)};
        },
        -f.window, f.window, f.quad);
    s.values.push_back(scale * res.value);
    s.err_bounds.push_back(scale * res.error_bound);
    s.sup_abs = std::max(s.sup_abs, std::abs(s.values.back()));
  }
  return s;
}

struct L1C0Report {
  double sup_abs = 0.0;
  double l1 = 0.0;
  double t0_bound = 0.0;  // the stronger (2 pi)^{-1/2} ||f||_L1 value at t = 0
  bool holds = false;
};

/// ||f_hat||_C0 <= ||f||_L1 on the sampled spectrum, within the combined
/// quadrature tolerance. The inequality is a theorem; a failure indicates a
/// quadrature-budget violation and surfaces as such upstream.
inline L1C0Report check_l1_c0_bound(const IntegrableFunction& f,
                                    const std::vector<double>& t_grid) {
  const auto s = fourier_transform(f, t_grid);
  double max_err = f.l1_error;
  for (double e : s.err_bounds) max_err = std::max(max_err, e);
  L1C0Report rep;
  rep.sup_abs = s.sup_abs;
  rep.l1 = f.l1_norm;
  rep.t0_bound = f.l1_norm / std::sqrt(2.0 * 3.14159265358979323846264338327950288);
  rep.holds = s.sup_abs <= f.l1_norm + max_err + 1e-9;
  return rep;
}

/// In-house radix-2 transform with unitary normalization 1/sqrt(N).
inline std::vector<Scalar> fft_unitary(std::vector<Scalar> v, bool inverse = false) {
  const std::size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0)
    fail(errc::length_not_power_of_two, "transform length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  const double pi = 3.14159265358979323846264338327950288;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
    const Scalar wl{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      Scalar w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Scalar u = v[i + j];
        const Scalar t = w * v[i + j + len / 2];
        v[i + j] = u + t;
        v[i + j + len / 2] = u - t;
        w *= wl;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : v) z *= scale;
  return v;
}

struct PlancherelReport {
  double norm_in = 0.0;
  double norm_out = 0.0;
  bool holds = false;
};

/// Desk-scale analogue of the Fourier-Plancherel isometry: the unitary
/// discrete transform preserves the 2-norm within `tol`.
inline PlancherelReport plancherel_check(const std::vector<Scalar>& v, double tol = 1e-9) {
  PlancherelReport rep;
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  rep.norm_in = std::sqrt(s);
  const auto w = fft_unitary(v);
  s = 0.0;
  for (const auto& z : w) s += std::norm(z);
  rep.norm_out = std::sqrt(s);
  rep.holds = std::abs(rep.norm_in - rep.norm_out) <= tol;
  return rep;
}

/// Smallest half-width at which |f| has decayed to 1e-16 of its central
/// magnitude, capped at `max_window`.
inline double auto_decay_window(const TestFunction& f, double max_window = 64.0) {
  double central = 0.0;
  for (double x = -2.0; x <= 2.0; x += 0.25) central = std::max(central, std::abs(f.eval({x})));
  if (central == 0.0) return 1.0;
  for (double w = 2.0; w < max_window; w *= 1.5) {
    double edge = 0.0;
    for (double x : {w, w + 0.33, w + 0.77, -w, -w - 0.33, -w - 0.77})
      edge = std::max(edge, std::abs(f.eval({x})));
    if (edge < 1e-16 * central) return w + 1.0;
  }
  return max_window;
}

/// The transform of a rapidly decreasing test function as a TestFunction:
/// derivative orders are transforms of (-i x)^alpha f(x), evaluated by
/// quadrature against the window.
inline TestFunction fourier_transform_testfunction(const TestFunction& f, double window,
                                                   QuadOptions quad = {1e-10, 2000000}) {
  if (f.dim != 1) fail(errc::config_invalid, "transform oracle is one-dimensional here");
  TestFunction g;
  g.dim = 1;
  g.max_order = f.max_order;
  g.support = std::nullopt;
  auto fd = f.deriv;
  const double scale = 1.0 / std::sqrt(2.0 * 3.14159265358979323846264338327950288);
  g.deriv = [fd, window, quad, scale](const MultiIndex& a, const RVec& t) -> Scalar {
    const int order = a[0];
    const double tt = t[0];
    const auto res = integrate(
        [fd, order, tt](double x) {
          Scalar weight{1.0, 0.0};
          for (int j = 0; j < order; ++j) weight *= Scalar{0.0, -x};
          return weight * fd(MultiIndex{0}, RVec{x}) * Scalar{std::cos(tt * x), -std::sin(tt * x)};
        },
        -window, window, quad);
    return scale * res.value;
  };
  return g;
}

struct SchwartzAmplificationRow {
  int k = 0;
  double f_seminorm = 0.0;
  double fhat_seminorm = 0.0;
  double ratio = 0.0;
};

/// Example 3(b) evidence: ||f||_k against ||f_hat||_k for k <= k_max over a
/// family; finite ratios witness that bounded seminorm balls map into
/// bounded seminorm balls.
inline std::vector<std::vector<SchwartzAmplificationRow>> schwartz_fourier_bounded(
    const std::vector<TestFunction>& family, int k_max, double max_window = 16.0,
    double grid_density = 4.0) {
  std::vector<std::vector<SchwartzAmplificationRow>> table;
  for (const auto& f : family) {
    if (!f.rapidly_decreasing())
      fail(errc::config_invalid, "schwartz check needs rapidly decreasing functions");
    std::vector<SchwartzAmplificationRow> rows;
    const auto fhat = fourier_transform_testfunction(f, auto_decay_window(f, max_window));
    // The transform side is quadrature-backed, so its boundary envelope is
    // certified only to the quadrature noise floor, not to 1e-12.
    const double fhat_decay_tol = 1e-9;
    for (int k = 0; k <= k_max; ++k) {
      SchwartzAmplificationRow row;
      row.k = k;
      row.f_seminorm = schwartz_seminorm(f, k, schwartz_auto_grid(f, k, grid_density));
      row.fhat_seminorm = schwartz_seminorm(
          fhat, k, schwartz_auto_grid(fhat, k, grid_density, 8.0, 7, fhat_decay_tol),
          fhat_decay_tol);
      row.ratio = row.f_seminorm > 0.0 ? row.fhat_seminorm / row.f_seminorm : 0.0;
      rows.push_back(row);
    }
    table.push_back(std::move(rows));
  }
  return table;
}

}  // namespace opnorm

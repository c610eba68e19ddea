#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

enum class ScalarField { real, cplx };

enum class NormFamily { ell1, ell2, ellinf, weighted };

/// Finite-dimensional normed space over R or C. `weighted` is a weighted
/// ell-1 norm with strictly positive weights.
struct FiniteSpace {
  std::size_t dimension = 1;
  ScalarField field = ScalarField::real;
  NormFamily norm_kind = NormFamily::ell2;
  std::vector<double> weights;  // used by NormFamily::weighted only

  Vec zero() const { return Vec(dimension); }

  double norm(const Vec& v) const {
    if (v.dim() != dimension) fail(errc::space_mismatch, "norm: vector of wrong dimension");
    switch (norm_kind) {
      case NormFamily::ell1: {
        double s = 0.0;
        for (const auto& z : v.c) s += std::abs(z);
        return s;
      }
      case NormFamily::ell2:
        return euclidean_norm(v);
      case NormFamily::ellinf: {
        double s = 0.0;
        for (const auto& z : v.c) s = std::max(s, std::abs(z));
        return s;
      }
      case NormFamily::weighted: {
        double s = 0.0;
        for (std::size_t i = 0; i < v.dim(); ++i) s += weights[i] * std::abs(v[i]);
        return s;
      }
    }
    return 0.0;
  }
};

inline FiniteSpace make_space(std::size_t dim, NormFamily kind = NormFamily::ell2,
                              ScalarField field = ScalarField::real,
                              std::vector<double> weights = {}) {
  if (dim == 0) fail(errc::config_invalid, "space dimension must be positive");
  if (kind == NormFamily::weighted) {
    if (weights.size() != dim) fail(errc::config_invalid, "weighted norm needs one weight per axis");
    for (double w : weights)
      if (!(w > 0.0)) fail(errc::config_invalid, "weights must be strictly positive");
  }
  return FiniteSpace{dim, field, kind, std::move(weights)};
}

/// Inner-product space with an orthonormal basis (identity by default).
struct InnerProductSpace {
  std::size_t dimension = 1;
  std::vector<Vec> basis;  // empty means the standard basis

  Vec zero() const { return Vec(dimension); }

  Vec basis_vector(std::size_t j) const {
    if (!basis.empty()) return basis[j];
    Vec e(dimension);
    e[j] = Scalar{1.0, 0.0};
    return e;
  }

  Scalar inner(const Vec& u, const Vec& v) const { return dot(u, v); }

  double norm(const Vec& u) const { return euclidean_norm(u); }
};

inline InnerProductSpace make_inner_product_space(std::size_t dim, std::vector<Vec> basis = {},
                                                  double tol = 1e-12) {
  if (dim == 0) fail(errc::config_invalid, "space dimension must be positive");
  if (!basis.empty()) {
    if (basis.size() != dim) fail(errc::config_invalid, "basis must have `dimension` vectors");
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const double expect = (i == j) ? 1.0 : 0.0;
        if (std::abs(dot(basis[i], basis[j]) - Scalar{expect, 0.0}) > tol)
          fail(errc::config_invalid, "basis is not orthonormal within tolerance");
      }
  }
  return InnerProductSpace{dim, std::move(basis)};
}

/// Finite probe set in an arbitrary point type P, with the metadata used by
/// the sup estimators. Construction dedupes and records the generator seed
/// when the set came from a seeded generator.
template <class P>
struct SampleSet {
  std::vector<P> points;
  bool contains_zero = false;
  double min_nonzero_norm = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

template <class P, class Dist0, class Eq>
SampleSet<P> make_sample_set(std::vector<P> pts, Dist0&& dist0, Eq&& eq, std::uint64_t seed = 0) {
  SampleSet<P> s;
  s.seed = seed;
  for (auto& p : pts) {
    bool dup = false;
    for (const auto& q : s.points)
      if (eq(p, q)) {
        dup = true;
        break;
      }
    if (!dup) s.points.push_back(std::move(p));
  }
  double mn = 0.0;
  bool seen = false;
  for (const auto& p : s.points) {
    const double d = dist0(p);
    if (d == 0.0) {
      s.contains_zero = true;
    } else if (!seen || d < mn) {
      mn = d;
      seen = true;
    }
  }
  s.min_nonzero_norm = seen ? mn : 0.0;
  return s;
}

inline SampleSet<Vec> make_vec_samples(const FiniteSpace& space, std::vector<Vec> pts,
                                       std::uint64_t seed = 0) {
  return make_sample_set(
      std::move(pts), [&](const Vec& v) { return space.norm(v); },
      [](const Vec& a, const Vec& b) { return a == b; }, seed);
}

/// Deterministic low-discrepancy samples in the ball of the given radius,
/// Halton directions times Halton radii. Always includes the origin.
inline SampleSet<Vec> ball_samples(const FiniteSpace& space, std::size_t count, double radius,
                                   std::uint64_t seed) {
  std::vector<Vec> pts;
  pts.push_back(space.zero());
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Vec v(space.dimension);
    double s = 0.0;
    for (std::size_t d = 0; d < space.dimension; ++d) {
      const double x = 2.0 * halton(k + seed % 997, halton_base(d)) - 1.0 + 0.03 * rng.normal();
      v[d] = Scalar{x, 0.0};
      s += x * x;
    }
    if (s == 0.0) continue;
    const double r = radius * std::pow(halton(k, 7), 1.0 / static_cast<double>(space.dimension));
    pts.push_back((r / std::sqrt(s)) * v);
  }
  return make_vec_samples(space, std::move(pts), seed);
}

/// Metric descriptor over an arbitrary point type. `zero` is the base point
/// used by d(., 0) style quantities. `scale_constants` holds claimed C_alpha
/// values when the caller asserts scale boundedness.
template <class P>
struct MetricDescriptor {
  std::function<double(const P&, const P&)> eval;
  P zero{};
  bool translation_invariant = false;
  std::optional<std::vector<std::pair<double, double>>> scale_constants;

  double to_zero(const P& p) const { return eval(p, zero); }
};

inline MetricDescriptor<Vec> norm_metric(const FiniteSpace& space) {
  MetricDescriptor<Vec> d;
  d.eval = [space](const Vec& a, const Vec& b) { return space.norm(a - b); };
  d.zero = space.zero();
  d.translation_invariant = true;
  return d;
}

struct TranslationReport {
  double max_discrepancy = 0.0;
  bool confirmed = false;
  std::size_t worst_x = 0, worst_y = 0, worst_shift = 0;
};

/// Max over (x, y, s) of |d(x+s, y+s) - d(x, y)|; the claim is confirmed iff
/// the discrepancy is below `tol`. Degenerate single-point sets report 0.
template <class P>
TranslationReport check_translation_invariance(const MetricDescriptor<P>& d,
                                               const SampleSet<P>& probes,
                                               const SampleSet<P>& shifts, double tol = 1e-12) {
  if (probes.empty() || shifts.empty())
    fail(errc::empty_samples, "translation invariance needs nonempty probes and shifts");
  TranslationReport rep;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j)
      for (std::size_t k = 0; k < shifts.size(); ++k) {
        const P xs = probes.points[i] + shifts.points[k];
        const P ys = probes.points[j] + shifts.points[k];
        const double disc = std::abs(d.eval(xs, ys) - d.eval(probes.points[i], probes.points[j]));
        if (disc > rep.max_discrepancy) {
          rep.max_discrepancy = disc;
          rep.worst_x = i;
          rep.worst_y = j;
          rep.worst_shift = k;
        }
      }
  rep.confirmed = rep.max_discrepancy <= tol;
  return rep;
}

struct ScaleConstantEstimate {
  double alpha = 0.0;
  double c_hat = 0.0;       // certified lower bound of any admissible C_alpha
  std::size_t witness = 0;  // probe attaining the max
};

/// C_hat(alpha) = max over probes s with d(s,0) > 0 of d(alpha s, 0)/d(s, 0).
template <class P>
std::vector<ScaleConstantEstimate> estimate_scale_constants(const MetricDescriptor<P>& d,
                                                            const SampleSet<P>& probes,
                                                            const std::vector<double>& scalars) {
  bool any = false;
  for (const auto& p : probes.points)
    if (d.to_zero(p) > 0.0) any = true;
  if (!any) fail(errc::degenerate_probe, "every probe has d(s,0) = 0");

  std::vector<ScaleConstantEstimate> out;
  for (double alpha : scalars) {
    if (alpha == 0.0) fail(errc::config_invalid, "scale constants need nonzero scalars");
    ScaleConstantEstimate e;
    e.alpha = alpha;
    bool seen = false;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double den = d.to_zero(probes.points[i]);
      if (den <= 0.0) continue;
      const double ratio = d.to_zero(alpha * probes.points[i]) / den;
      if (!seen || ratio > e.c_hat) {
        e.c_hat = ratio;
        e.witness = i;
        seen = true;
      }
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace opnorm

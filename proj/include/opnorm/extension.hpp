#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/opspace.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

/// Real-valued functional known on a finite point set; the substrate all
/// extension steps grow.
struct PartialFunctional {
  std::vector<Vec> points;
  std::vector<double> values;

  std::size_t size() const noexcept { return points.size(); }

  std::optional<std::size_t> find(const Vec& x) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == x) return i;
    return std::nullopt;
  }
};

inline PartialFunctional make_partial_functional(std::vector<Vec> points,
                                                 std::vector<double> values) {
  if (points.size() != values.size())
    fail(errc::config_invalid, "point and value counts differ");
  PartialFunctional f;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (f.find(points[i])) fail(errc::config_invalid, "domain points must be distinct");
    f.points.push_back(points[i]);
    f.values.push_back(values[i]);
  }
  return f;
}

/// Sub-additive dominating functional p. `sublinear` asserts positive
/// homogeneity in addition (enabling the all-pairs mode of Corollary 2);
/// `modulus` is the uniform-continuity modulus delta -> epsilon needed by
/// the Theorem 5 step.
struct SubadditiveFunctional {
  std::function<double(const Vec&)> eval;
  bool sublinear = false;
  std::optional<std::function<double(double)>> modulus;
};

inline SubadditiveFunctional scaled_norm_functional(const FiniteSpace& space, double scale = 1.0) {
  SubadditiveFunctional p;
  p.eval = [space, scale](const Vec& x) { return scale * space.norm(x); };
  p.sublinear = true;
  p.modulus = [scale](double h) { return scale * h; };
  return p;
}

enum class PairMode { strict_pairs, all_pairs };

struct PairwiseReport {
  double worst_margin = 0.0;  // min over pairs of p(s1+s2) - F(s1) - F(s2)
  std::size_t worst_i = 0, worst_j = 0;
  bool passed = false;
};

/// Theorem 4 hypothesis check. strict_pairs tests s1 != s2 only; all_pairs
/// also tests s1 = s2 (the Corollary 2 regime, sound when p is sublinear).
/// A negative margin is a failing verdict, not an exception.
inline PairwiseReport check_pairwise_inequality(const PartialFunctional& f,
                                                const SubadditiveFunctional& p, PairMode mode,
                                                double tol = 1e-12) {
  if (f.size() == 0) fail(errc::empty_samples, "empty functional domain");
  PairwiseReport rep;
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t j0 = (mode == PairMode::strict_pairs) ? i + 1 : i;
    for (std::size_t j = j0; j < f.size(); ++j) {
      const double margin = p.eval(f.points[i] + f.points[j]) - f.values[i] - f.values[j];
      if (first || margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_i = i;
        rep.worst_j = j;
        first = false;
      }
    }
  }
  if (first) rep.worst_margin = 0.0;  // singleton domain in strict mode: nothing to check
  rep.passed = rep.worst_margin >= -tol;
  return rep;
}

struct OnePointExtension {
  PartialFunctional extended;
  double c = 0.0;  // sup over the domain of F(x) - p(x + y)
  std::size_t c_witness = 0;
};

/// The Theorem 4 proof step: the new value at y is -c with
/// c = max over domain points x of [F(x) - p(x + y)]. A singleton domain
/// uses the single-term max. The enlarged functional is guaranteed to pass
/// the pairwise check again; that invariant is asserted by the caller's
/// tests rather than recomputed here.
inline OnePointExtension extend_one_point(const PartialFunctional& f,
                                          const SubadditiveFunctional& p, const Vec& y,
                                          PairMode mode = PairMode::strict_pairs,
                                          double tol = 1e-12) {
  if (f.find(y)) fail(errc::point_in_domain, "target already in the domain");
  const auto pre = check_pairwise_inequality(f, p, mode, tol);
  if (!pre.passed)
    fail(errc::precheck_failed, "pairwise inequality fails with margin " +
                                    std::to_string(pre.worst_margin));
  OnePointExtension out;
  out.extended = f;
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double term = f.values[i] - p.eval(f.points[i] + y);
    if (first || term > out.c) {
      out.c = term;
      out.c_witness = i;
      first = false;
    }
  }
  out.extended.points.push_back(y);
  out.extended.values.push_back(-out.c);
  return out;
}

/// Iterated one-point steps over a user-ordered target list; the order is
/// part of the result since extension values may depend on it.
inline PartialFunctional extend_over_set(const PartialFunctional& f,
                                         const SubadditiveFunctional& p,
                                         const std::vector<Vec>& targets,
                                         PairMode mode = PairMode::strict_pairs,
                                         double tol = 1e-12) {
  PartialFunctional cur = f;
  for (const auto& y : targets) cur = extend_one_point(cur, p, y, mode, tol).extended;
  return cur;
}

struct PosNegExtension {
  PartialFunctional extended;       // F_hat = F_hat_plus - F_hat_minus
  PartialFunctional plus, minus;    // the separately extended parts
  double worst_pair_margin = 0.0;   // min of (M1+M2)||x1+x2|| - |F(x1)+F(x2)|
  double worst_point_margin = 0.0;  // min of (M1+M2)||x|| - |F(x)|
  bool holds = false;
};

/// Corollary 3: split into positive and negative parts, extend each against
/// M_i ||.||, recombine, and check the advertised bounds on every extended
/// pair and point.
inline PosNegExtension extend_posneg(const PartialFunctional& f, double M1, double M2,
                                     const std::vector<Vec>& targets, const FiniteSpace& space,
                                     double tol = 1e-12) {
  if (!(M1 > 0.0) || !(M2 > 0.0)) fail(errc::config_invalid, "M1, M2 must be positive");
  const auto zi = f.find(space.zero());
  if (!zi || f.values[*zi] != 0.0)
    fail(errc::precheck_failed, "Corollary 3 needs 0 in the domain with F(0) = 0");

  PartialFunctional fplus = f, fminus = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fplus.values[i] = std::max(f.values[i], 0.0);
    fminus.values[i] = std::max(-f.values[i], 0.0);
  }
  const auto p1 = scaled_norm_functional(space, M1);
  const auto p2 = scaled_norm_functional(space, M2);
  if (!check_pairwise_inequality(fplus, p1, PairMode::all_pairs, tol).passed)
    fail(errc::precheck_failed, "positive part fails its pairwise precheck");
  if (!check_pairwise_inequality(fminus, p2, PairMode::all_pairs, tol).passed)
    fail(errc::precheck_failed, "negative part fails its pairwise precheck");

  PosNegExtension out;
  out.plus = extend_over_set(fplus, p1, targets, PairMode::all_pairs, tol);
  out.minus = extend_over_set(fminus, p2, targets, PairMode::all_pairs, tol);
  out.extended = out.plus;
  for (std::size_t i = 0; i < out.extended.size(); ++i)
    out.extended.values[i] = out.plus.values[i] - out.minus.values[i];

  const double M = M1 + M2;
  bool first = true;
  for (std::size_t i = 0; i < out.extended.size(); ++i) {
    const double pm = M * space.norm(out.extended.points[i]) - std::abs(out.extended.values[i]);
    if (first || pm < out.worst_point_margin) out.worst_point_margin = pm;
    for (std::size_t j = i; j < out.extended.size(); ++j) {
      const double margin =
          M * space.norm(out.extended.points[i] + out.extended.points[j]) -
          std::abs(out.extended.values[i] + out.extended.values[j]);
      if (first || margin < out.worst_pair_margin) out.worst_pair_margin = margin;
      first = false;
    }
  }
  out.holds = out.worst_pair_margin >= -tol && out.worst_point_margin >= -tol;
  return out;
}

/// Corollary 4: componentwise extension of F = F_r + i F_c.
struct ComplexExtension {
  PartialFunctional real_part, imag_part;
};

inline ComplexExtension extend_complex(const PartialFunctional& fr, const PartialFunctional& fc,
                                       const SubadditiveFunctional& pr,
                                       const SubadditiveFunctional& pc,
                                       const std::vector<Vec>& targets,
                                       PairMode mode = PairMode::strict_pairs,
                                       double tol = 1e-12) {
  ComplexExtension out;
  try {
    out.real_part = extend_over_set(fr, pr, targets, mode, tol);
  } catch (const error& e) {
    fail(e.code(), std::string("real part: ") + e.what());
  }
  try {
    out.imag_part = extend_over_set(fc, pc, targets, mode, tol);
  } catch (const error& e) {
    fail(e.code(), std::string("imaginary part: ") + e.what());
  }
  return out;
}

/// State of the Theorem 5 separable-Hilbert extension. E_{m-1} is sampled as
/// scalar multiples of each basis vector on a geometric ladder whose point
/// count per line is `line_sample_density`.
struct RTable {
  std::vector<double> t;
  std::vector<double> r;
};

struct HilbertExtensionState {
  InnerProductSpace space;
  std::vector<Vec> base_basis;         // {e_j}
  std::vector<Vec> added_directions;   // {e*_1, ..., e*_m} so far
  int line_sample_density = 8;
  std::vector<RTable> r_tables;        // one per added direction
};

inline HilbertExtensionState make_hilbert_state(InnerProductSpace space,
                                                std::vector<Vec> base_basis,
                                                int line_sample_density = 8,
                                                double tol = 1e-12) {
  if (line_sample_density <= 0) fail(errc::config_invalid, "line_sample_density must be positive");
  for (std::size_t i = 0; i < base_basis.size(); ++i)
    for (std::size_t j = 0; j < base_basis.size(); ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot(base_basis[i], base_basis[j]) - Scalar{expect, 0.0}) > tol)
        fail(errc::config_invalid, "base basis is not orthonormal");
    }
  return HilbertExtensionState{std::move(space), std::move(base_basis), {},
                               line_sample_density, {}};
}

/// Ladder of line parameters: density log-spaced magnitudes in [2^-3, 2^3],
/// both signs.
inline std::vector<double> line_ladder(int density) {
  std::vector<double> ts;
  for (int k = 0; k < density; ++k) {
    const double expo = -3.0 + 6.0 * static_cast<double>(k) /
                                   static_cast<double>(std::max(1, density - 1));
    const double v = std::pow(2.0, expo);
    ts.push_back(v);
    ts.push_back(-v);
  }
  return ts;
}

/// Sampled E_{m-1}: 0 together with ladder multiples of every base and
/// already added direction.
inline std::vector<Vec> make_line_samples(const HilbertExtensionState& state) {
  std::vector<Vec> pts;
  pts.push_back(state.space.zero());
  const auto ladder = line_ladder(state.line_sample_density);
  auto add_line = [&](const Vec& e) {
    for (double t : ladder) pts.push_back(t * e);
  };
  for (const auto& e : state.base_basis) add_line(e);
  for (const auto& e : state.added_directions) add_line(e);
  return pts;
}

struct HilbertStepResult {
  HilbertExtensionState state;     // with the direction and its r-table appended
  PartialFunctional extended;      // F plus the new line t*e -> -r(t)
  RTable r_table;
  double worst_orthogonal_margin = 0.0;  // min over (x, t) of p(x+te) - F(x) + r(t)
  std::optional<double> worst_modulus_margin;  // min of eps(|t1-t2|) - |r(t1)-r(t2)|
};

/// One Theorem 5 step: r(t) = max over the sampled E_{m-1} (the domain of F)
/// of [F(x) - p(x + t e*_m)], extension value -r(t) on the new line. The
/// basis-line orthogonal-pair inequality F(x) + F1(t e*_m) <= p(x + t e*_m)
/// holds on the sampled set by construction of r; its margin is reported.
inline HilbertStepResult hilbert_step(const HilbertExtensionState& state,
                                      const PartialFunctional& f,
                                      const SubadditiveFunctional& p, const Vec& direction,
                                      const std::vector<double>& t_grid, double tol = 1e-12,
                                      bool want_modulus_report = false) {
  if (t_grid.empty()) fail(errc::empty_samples, "empty t grid");
  if (std::abs(p.eval(state.space.zero())) > tol)
    fail(errc::precheck_failed, "Theorem 5 needs p(0) = 0");
  const auto zi = f.find(state.space.zero());
  if (!zi || std::abs(f.values[*zi]) > tol)
    fail(errc::precheck_failed, "Theorem 5 needs F(0) = 0 on the sampled lines");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.values[i] - p.eval(f.points[i]) > tol)
      fail(errc::precheck_failed, "F <= p fails on the sampled lines");
  for (const auto& e : state.base_basis)
    if (std::abs(dot(direction, e)) > 1e-12)
      fail(errc::config_invalid, "direction not orthogonal to the base basis");
  for (const auto& e : state.added_directions)
    if (std::abs(dot(direction, e)) > 1e-12)
      fail(errc::config_invalid, "direction not orthogonal to added directions");
  if (std::abs(euclidean_norm(direction) - 1.0) > 1e-12)
    fail(errc::config_invalid, "direction must be a unit vector");
  if (want_modulus_report && !p.modulus)
    fail(errc::modulus_missing, "continuity report requested but p has no modulus");

  HilbertStepResult out;
  out.r_table.t = t_grid;
  out.r_table.r.reserve(t_grid.size());
  for (double t : t_grid) {
    double r = f.values[0] - p.eval(f.points[0] + t * direction);
    for (std::size_t i = 1; i < f.size(); ++i)
      r = std::max(r, f.values[i] - p.eval(f.points[i] + t * direction));
    out.r_table.r.push_back(r);
  }

  out.extended = f;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const Vec pt = t_grid[k] * direction;
    if (!out.extended.find(pt)) {
      out.extended.points.push_back(pt);
      out.extended.values.push_back(-out.r_table.r[k]);
    }
  }

  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double margin = p.eval(f.points[i] + t_grid[k] * direction) - f.values[i] +
                            out.r_table.r[k];
      if (first || margin < out.worst_orthogonal_margin) out.worst_orthogonal_margin = margin;
      first = false;
    }

  if (want_modulus_report) {
    double worst = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
      for (std::size_t j = i + 1; j < t_grid.size(); ++j) {
        const double eps = (*p.modulus)(std::abs(t_grid[i] - t_grid[j]));
        const double margin = eps - std::abs(out.r_table.r[i] - out.r_table.r[j]);
        if (!seen || margin < worst) worst = margin;
        seen = true;
      }
    out.worst_modulus_margin = worst;
  }

  out.state = state;
  out.state.added_directions.push_back(direction);
  out.state.r_tables.push_back(out.r_table);
  return out;
}

/// Theorem 6 / Corollaries 7-8 data: a linear form on a subspace given by
/// coefficients against an orthonormal subspace basis, wrapped by a monotone
/// function f.
struct LinearFormExtension {
  std::vector<Vec> subspace_basis;   // orthonormal
  std::vector<Scalar> coefficients;  // T(b_i)
  enum class Wrapper { identity, power, user } wrapper = Wrapper::identity;
  double power_k = 1.0;
  std::function<double(double)> user_f;  // used when wrapper == user
};

struct LinearExtensionResult {
  OperatorHandle extended;          // F_hat: ambient -> R (1-dim codomain)
  std::function<Scalar(const Vec&)> t_hat;  // the extended linear form
  double norm_T = 0.0;              // exact ||T|| = ||T_hat||
  std::optional<double> norm_F_pk;  // exact ||F_hat||_{p_k} for the power wrapper
  Vec attaining_direction;          // unit vector attaining the sup (power wrapper)
};

/// Norm-preserving extension in the Hilbert setting: T_hat = T composed with
/// the orthogonal projection onto Z, then F_hat(x) = f(|T_hat(x)|). For
/// f(u) = u^k the exact p_k norm equals ||T||^k, attained along the
/// coefficient direction.
inline LinearExtensionResult extend_via_linear(const LinearFormExtension& ext,
                                               const InnerProductSpace& ambient,
                                               double tol = 1e-12) {
  if (ext.subspace_basis.empty()) fail(errc::config_invalid, "empty subspace basis");
  if (ext.subspace_basis.size() != ext.coefficients.size())
    fail(errc::config_invalid, "one coefficient per basis vector required");
  for (std::size_t i = 0; i < ext.subspace_basis.size(); ++i) {
    if (ext.subspace_basis[i].dim() != ambient.dimension)
      fail(errc::space_mismatch, "basis vectors must live in the ambient space");
    for (std::size_t j = 0; j < ext.subspace_basis.size(); ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot(ext.subspace_basis[i], ext.subspace_basis[j]) - Scalar{expect, 0.0}) > tol)
        fail(errc::config_invalid, "subspace basis is not orthonormal");
    }
  }

  std::function<double(double)> wrap;
  switch (ext.wrapper) {
    case LinearFormExtension::Wrapper::identity:
      wrap = [](double u) { return u; };
      break;
    case LinearFormExtension::Wrapper::power: {
      const double k = ext.power_k;
      if (!(k > 0.0)) fail(errc::config_invalid, "power wrapper needs k > 0");
      wrap = [k](double u) { return std::pow(u, k); };
      break;
    }
    case LinearFormExtension::Wrapper::user:
      if (!ext.user_f) fail(errc::config_invalid, "user wrapper needs a function");
      wrap = ext.user_f;
      break;
  }
  // Sampled monotonicity probe on a nonnegative grid.
  double prev = wrap(0.0);
  for (int i = 1; i <= 64; ++i) {
    const double cur = wrap(0.25 * i);
    if (cur < prev - tol) fail(errc::not_monotone, "wrapper decreases on the sampled grid");
    prev = cur;
  }

  LinearExtensionResult out;
  const auto basis = ext.subspace_basis;
  const auto coef = ext.coefficients;
  out.t_hat = [basis, coef](const Vec& x) {
    Scalar s{0.0, 0.0};
    for (std::size_t i = 0; i < basis.size(); ++i) s += coef[i] * dot(x, basis[i]);
    return s;
  };
  double c2 = 0.0;
  for (const auto& c : coef) c2 += std::norm(c);
  out.norm_T = std::sqrt(c2);

  const FiniteSpace dom = make_space(ambient.dimension, NormFamily::ell2);
  const FiniteSpace cod = make_space(1, NormFamily::ell2);
  auto th = out.t_hat;
  out.extended = make_operator(dom, cod, [th, wrap](const Vec& x) {
    Vec y(1);
    y[0] = Scalar{wrap(std::abs(th(x))), 0.0};
    return y;
  });

  if (ext.wrapper == LinearFormExtension::Wrapper::power)
    out.norm_F_pk = std::pow(out.norm_T, ext.power_k);

  Vec dir(ambient.dimension);
  if (out.norm_T > 0.0) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      dir = dir + (std::conj(coef[i]) * (1.0 / out.norm_T)) * basis[i];
  }
  out.attaining_direction = dir;
  return out;
}

}  // namespace opnorm

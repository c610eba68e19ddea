#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

/// Black-box evaluable operator between finite-dimensional normed spaces.
/// The value at 0 is cached at construction so the zero branch of the norm
/// is exact; `linear` is an optional claim checked by probes elsewhere.
struct OperatorHandle {
  FiniteSpace domain;
  FiniteSpace codomain;
  std::function<Vec(const Vec&)> eval;
  Vec value_at_zero;
  std::optional<bool> linear;

  Vec operator()(const Vec& x) const { return eval(x); }
};

inline OperatorHandle make_operator(FiniteSpace domain, FiniteSpace codomain,
                                    std::function<Vec(const Vec&)> fn,
                                    std::optional<bool> linear = std::nullopt) {
  OperatorHandle f;
  f.domain = std::move(domain);
  f.codomain = std::move(codomain);
  f.eval = std::move(fn);
  f.value_at_zero = f.eval(f.domain.zero());
  if (f.value_at_zero.dim() != f.codomain.dimension)
    fail(errc::space_mismatch, "operator image has wrong dimension");
  f.linear = linear;
  return f;
}

inline OperatorHandle identity_operator(const FiniteSpace& space) {
  return make_operator(space, space, [](const Vec& x) { return x; }, true);
}

inline OperatorHandle zero_operator(const FiniteSpace& domain, const FiniteSpace& codomain) {
  const std::size_t n = codomain.dimension;
  return make_operator(domain, codomain, [n](const Vec&) { return Vec(n); }, true);
}

inline OperatorHandle constant_operator(const FiniteSpace& domain, const FiniteSpace& codomain,
                                        Vec value) {
  return make_operator(domain, codomain, [value](const Vec&) { return value; }, false);
}

/// Operator from a dense matrix given as rows (codomain x domain).
inline OperatorHandle linear_operator(const FiniteSpace& domain, const FiniteSpace& codomain,
                                      std::vector<std::vector<Scalar>> rows) {
  if (rows.size() != codomain.dimension)
    fail(errc::space_mismatch, "matrix row count != codomain dimension");
  for (const auto& r : rows)
    if (r.size() != domain.dimension)
      fail(errc::space_mismatch, "matrix column count != domain dimension");
  return make_operator(
      domain, codomain,
      [rows](const Vec& x) {
        Vec y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          Scalar s{0.0, 0.0};
          for (std::size_t j = 0; j < rows[i].size(); ++j) s += rows[i][j] * x[j];
          y[i] = s;
        }
        return y;
      },
      true);
}

inline OperatorHandle op_add(const OperatorHandle& f, const OperatorHandle& g) {
  if (f.domain.dimension != g.domain.dimension || f.codomain.dimension != g.codomain.dimension)
    fail(errc::space_mismatch, "op_add: operands live on different spaces");
  auto fe = f.eval, ge = g.eval;
  std::optional<bool> lin;
  if (f.linear && g.linear) lin = *f.linear && *g.linear;
  return make_operator(f.domain, f.codomain, [fe, ge](const Vec& x) { return fe(x) + ge(x); }, lin);
}

inline OperatorHandle op_sub(const OperatorHandle& f, const OperatorHandle& g) {
  if (f.domain.dimension != g.domain.dimension || f.codomain.dimension != g.codomain.dimension)
    fail(errc::space_mismatch, "op_sub: operands live on different spaces");
  auto fe = f.eval, ge = g.eval;
  std::optional<bool> lin;
  if (f.linear && g.linear) lin = *f.linear && *g.linear;
  return make_operator(f.domain, f.codomain, [fe, ge](const Vec& x) { return fe(x) - ge(x); }, lin);
}

inline OperatorHandle op_scale(Scalar alpha, const OperatorHandle& f) {
  auto fe = f.eval;
  return make_operator(f.domain, f.codomain, [alpha, fe](const Vec& x) { return alpha * fe(x); },
                       f.linear);
}

/// x -> F2(F1(x)); SpaceMismatch unless codomain(F1) == domain(F2).
inline OperatorHandle compose(const OperatorHandle& f1, const OperatorHandle& f2) {
  if (f1.codomain.dimension != f2.domain.dimension)
    fail(errc::space_mismatch, "compose: codomain of F1 != domain of F2");
  auto e1 = f1.eval, e2 = f2.eval;
  std::optional<bool> lin;
  if (f1.linear && f2.linear) lin = *f1.linear && *f2.linear;
  return make_operator(f1.domain, f2.codomain, [e1, e2](const Vec& x) { return e2(e1(x)); }, lin);
}

/// The norm being estimated: p, p*, q_s, q*_s or p_k.
struct NormKind {
  enum class Family { p, p_star, q, q_star, p_k } family = Family::p;
  double param = 1.0;  // s for q/q*, k for p_k

  static NormKind p() { return {Family::p, 1.0}; }
  static NormKind p_star() { return {Family::p_star, 1.0}; }
  static NormKind q(double s) {
    if (!(s > 0.0)) fail(errc::config_invalid, "q norm needs s > 0");
    return {Family::q, s};
  }
  static NormKind q_star(double s) {
    if (!(s > 0.0)) fail(errc::config_invalid, "q* norm needs s > 0");
    return {Family::q_star, s};
  }
  static NormKind p_k(double k) {
    if (!(k > 0.0)) fail(errc::config_invalid, "p_k norm needs k > 0");
    return {Family::p_k, k};
  }

  std::string name() const {
    switch (family) {
      case Family::p: return "p";
      case Family::p_star: return "pstar";
      case Family::q: return "q:" + std::to_string(param);
      case Family::q_star: return "qstar:" + std::to_string(param);
      case Family::p_k: return "pk:" + std::to_string(param);
    }
    return "?";
  }
};

enum class CertificateKind { sampled_lower_bound, analytic_upper_bound, exact_value };

inline const char* certificate_name(CertificateKind c) {
  switch (c) {
    case CertificateKind::sampled_lower_bound: return "sampled_lower_bound";
    case CertificateKind::analytic_upper_bound: return "analytic_upper_bound";
    case CertificateKind::exact_value: return "exact";
  }
  return "?";
}

/// A sup-type quantity together with what certifies it. Sampled values are
/// true lower bounds of the exact supremum; +infinity appears only with an
/// explicit witness (extended-real convention of the mapping metric).
struct NormEstimate {
  double value = 0.0;
  NormKind kind;
  CertificateKind certificate = CertificateKind::sampled_lower_bound;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  std::optional<std::size_t> witness;  // sample index attaining the max
  std::string note;
};

/// Sampled estimate of the section-2 norms. For kind p the value is
/// max(max over nonzero samples of ||F(x)||/||x||, ||F(0)||); the other kinds
/// follow the corresponding displays. Samples with 0 < ||x|| < 1e-300 signal
/// NearZeroSample.
inline NormEstimate estimate_norm(const OperatorHandle& f, NormKind kind,
                                  const SampleSet<Vec>& samples) {
  if (samples.empty()) fail(errc::empty_samples, "estimate_norm needs samples");
  double sup_ratio = 0.0;
  std::optional<std::size_t> witness;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec& x = samples.points[i];
    const double nx = f.domain.norm(x);
    if (nx == 0.0) continue;
    if (nx < 1e-300) fail(errc::near_zero_sample, "sample norm below 1e-300");
    const double ny = f.codomain.norm(f.eval(x));
    const double den = (kind.family == NormKind::Family::p_k) ? std::pow(nx, kind.param) : nx;
    const double ratio = ny / den;
    if (ratio > sup_ratio) {
      sup_ratio = ratio;
      witness = i;
    }
  }
  const double z = f.codomain.norm(f.value_at_zero);

  NormEstimate e;
  e.kind = kind;
  e.seed = samples.seed;
  e.sample_count = samples.size();
  e.witness = witness;
  switch (kind.family) {
    case NormKind::Family::p:
    case NormKind::Family::p_k:
      e.value = std::max(sup_ratio, z);
      break;
    case NormKind::Family::p_star:
      e.value = sup_ratio + z;
      break;
    case NormKind::Family::q:
      e.value = std::max(sup_ratio, kind.param * z);
      break;
    case NormKind::Family::q_star:
      e.value = sup_ratio + kind.param * z;
      break;
  }
  return e;
}

struct EquivalenceReport {
  double p_hat = 0.0;
  double p_star_hat = 0.0;
  bool holds = false;
};

/// p_hat <= p_star_hat <= 2 p_hat on the identical sample set.
inline EquivalenceReport norm_equivalence_report(const OperatorHandle& f,
                                                 const SampleSet<Vec>& samples,
                                                 double tol = 1e-12) {
  EquivalenceReport r;
  r.p_hat = estimate_norm(f, NormKind::p(), samples).value;
  r.p_star_hat = estimate_norm(f, NormKind::p_star(), samples).value;
  r.holds = r.p_hat <= r.p_star_hat + tol && r.p_star_hat <= 2.0 * r.p_hat + tol;
  return r;
}

struct CompositionBound {
  double composed = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;  // over the image set F1(S) plus 0
  bool holds = false;
};

/// Lemma 1 check with the sample-closure convention: p(F2 o F1) on S is
/// compared against p(F1) on S times p(F2) on F1(S) united with {0}. With
/// this closure the inequality is guaranteed; a violation is a bug.
inline CompositionBound check_composition_bound(const OperatorHandle& f1,
                                                const OperatorHandle& f2,
                                                const SampleSet<Vec>& samples,
                                                double tol = 1e-12) {
  if (f1.codomain.norm(f1.value_at_zero) != 0.0 || f2.codomain.norm(f2.value_at_zero) != 0.0)
    fail(errc::hypothesis_violated, "Lemma 1 needs F1(0) = 0 and F2(0) = 0");

  std::vector<Vec> image;
  image.push_back(f2.domain.zero());
  for (const auto& x : samples.points) image.push_back(f1.eval(x));
  const auto image_set = make_vec_samples(f2.domain, std::move(image), samples.seed);

  CompositionBound b;
  b.composed = estimate_norm(compose(f1, f2), NormKind::p(), samples).value;
  b.f1 = estimate_norm(f1, NormKind::p(), samples).value;
  b.f2 = estimate_norm(f2, NormKind::p(), image_set).value;
  b.holds = b.composed <= b.f1 * b.f2 + tol;
  return b;
}

/// The B(S, Y) restriction norm: p with the sup restricted to S, 0 in S.
inline NormEstimate restrict_norm(const OperatorHandle& f, const SampleSet<Vec>& s) {
  if (!s.contains_zero) fail(errc::zero_missing, "B(S,Y) norm needs 0 in S");
  NormEstimate e = estimate_norm(f, NormKind::p(), s);
  e.note = "restricted to S";
  return e;
}

}  // namespace opnorm

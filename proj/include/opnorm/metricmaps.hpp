#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/opspace.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/vec.hpp"

namespace opnorm {

/// Ratio cap beyond which the mapping metric reports +infinity.
inline constexpr double kExtendedRealCap = 1e15;

template <class P, class Y>
struct MappingHandle {
  std::function<Y(const P&)> eval;
  Y value_at_zero{};

  Y operator()(const P& x) const { return eval(x); }
};

template <class P, class Y>
MappingHandle<P, Y> make_mapping(std::function<Y(const P&)> fn, const P& zero) {
  MappingHandle<P, Y> m;
  m.eval = std::move(fn);
  m.value_at_zero = m.eval(zero);
  return m;
}

/// The data of the section 5.1 metric d on B_d(X, Y): metrics on both sides
/// plus the shared sample set. `y_unit` is set when Y is a unital algebra.
template <class P, class Y>
struct MappingMetric {
  MetricDescriptor<P> dX;
  std::function<double(const Y&, const Y&)> dY;
  bool dY_norm_induced = false;
  Y y_zero{};
  std::optional<Y> y_unit;
  SampleSet<P> samples;
};

/// d(F1, F2) = max(sup over nonzero samples of d_Y(F1 x, F2 x)/d_X(x, 0),
/// d_Y(F1(0), F2(0))). Ratios beyond the cap report +infinity with the
/// witnessing sample instead of throwing.
template <class P, class Y>
NormEstimate metric_d(const MappingHandle<P, Y>& f1, const MappingHandle<P, Y>& f2,
                      const MappingMetric<P, Y>& mm) {
  if (mm.samples.empty()) fail(errc::empty_samples, "metric_d needs samples");
  NormEstimate e;
  e.kind = NormKind::p();
  e.seed = mm.samples.seed;
  e.sample_count = mm.samples.size();
  double best = mm.dY(f1.value_at_zero, f2.value_at_zero);
  std::optional<std::size_t> witness;
  for (std::size_t i = 0; i < mm.samples.size(); ++i) {
    const P& x = mm.samples.points[i];
    const double dx = mm.dX.to_zero(x);
    if (dx == 0.0) continue;
    const double ratio = mm.dY(f1.eval(x), f2.eval(x)) / dx;
    if (ratio > best) {
      best = ratio;
      witness = i;
    }
  }
  if (best > kExtendedRealCap) {
    e.value = std::numeric_limits<double>::infinity();
    e.note = "ratio above extended-real cap";
  } else {
    e.value = best;
  }
  e.witness = witness;
  return e;
}

template <class P, class Y>
NormEstimate mapping_norm(const MappingHandle<P, Y>& f, const MappingMetric<P, Y>& mm) {
  MappingHandle<P, Y> zero;
  const Y z = mm.y_zero;
  zero.eval = [z](const P&) { return z; };
  zero.value_at_zero = z;
  return metric_d(f, zero, mm);
}

struct MembershipReport {
  std::vector<std::pair<double, double>> near_zero_ratios;  // (d_X(x,0), ratio)
  bool near_ratio_bounded = false;
  double far_max = 0.0;
  std::vector<std::pair<std::pair<double, double>, bool>> ball_results;  // ((e1,e2), contained)
};

/// Theorem 8 evidence in both directions: the trend of d_Y(F x, 0)/d_X(x, 0)
/// on a near-zero ladder, the image bound on far samples, and sampled ball
/// inclusions F[B_X(e1)] in B_Y(e2).
template <class P, class Y>
MembershipReport check_membership_criteria(const MappingHandle<P, Y>& f,
                                           const MappingMetric<P, Y>& mm,
                                           const SampleSet<P>& near_zero,
                                           const SampleSet<P>& far,
                                           const std::vector<std::pair<double, double>>& balls) {
  MembershipReport rep;
  double worst_ratio = 0.0;
  for (const auto& x : near_zero.points) {
    const double dx = mm.dX.to_zero(x);
    if (dx == 0.0) continue;
    const double ratio = mm.dY(f.eval(x), mm.y_zero) / dx;
    rep.near_zero_ratios.emplace_back(dx, ratio);
    worst_ratio = std::max(worst_ratio, ratio);
  }
  rep.near_ratio_bounded = worst_ratio < kExtendedRealCap;
  for (const auto& x : far.points) rep.far_max = std::max(rep.far_max, mm.dY(f.eval(x), mm.y_zero));
  for (const auto& [e1, e2] : balls) {
    bool contained = true;
    for (const auto& x : mm.samples.points) {
      if (mm.dX.to_zero(x) >= e1) continue;
      if (mm.dY(f.eval(x), mm.y_zero) >= e2) contained = false;
    }
    rep.ball_results.push_back({{e1, e2}, contained});
  }
  return rep;
}

struct LinearBridgeReport {
  double d_hat = 0.0;
  double worst_margin = 0.0;  // min of d_hat * d_X(x1-x2, 0) - d_Y(F x1, F x2)
  bool holds = false;
};

/// Theorem 9(a): a linear member of B_d is continuous with modulus d(F, 0).
/// The estimate is taken over the sample closure containing all pairwise
/// differences, which makes the asserted inequality sound on the probes.
template <class P, class Y>
LinearBridgeReport check_linear_bridge(const MappingHandle<P, Y>& f,
                                       const MappingMetric<P, Y>& mm,
                                       const std::vector<std::pair<P, P>>& probe_pairs,
                                       double linearity_tol = 1e-9, double tol = 1e-9) {
  if (!mm.dX.translation_invariant)
    fail(errc::config_invalid, "linear bridge needs a translation invariant d_X");
  for (const auto& [x1, x2] : probe_pairs) {
    const double defect = mm.dY(f.eval(x1 + x2), f.eval(x1) + f.eval(x2));
    if (defect > linearity_tol)
      fail(errc::not_linear_on_probes, "additivity defect " + std::to_string(defect));
  }

  std::vector<P> closure = mm.samples.points;
  for (const auto& [x1, x2] : probe_pairs) {
    closure.push_back(x1);
    closure.push_back(x2);
    closure.push_back(x1 - x2);
  }
  MappingMetric<P, Y> closed = mm;
  closed.samples = make_sample_set(
      std::move(closure), [&](const P& x) { return mm.dX.to_zero(x); },
      [](const P&, const P&) { return false; }, mm.samples.seed);

  LinearBridgeReport rep;
  rep.d_hat = mapping_norm(f, closed).value;
  bool first = true;
  for (const auto& [x1, x2] : probe_pairs) {
    const double margin =
        rep.d_hat * mm.dX.to_zero(x1 - x2) - mm.dY(f.eval(x1), f.eval(x2));
    if (first || margin < rep.worst_margin) rep.worst_margin = margin;
    first = false;
  }
  rep.holds = rep.worst_margin >= -tol * (1.0 + rep.d_hat);
  return rep;
}

struct NormStructureReport {
  double homogeneity_defect = 0.0;
  double triangle_margin = 0.0;
  bool zero_iff_vanishes = false;
  double translation_defect = 0.0;
  bool holds = false;
};

/// Theorem 10 on the shared sample set: homogeneity and the triangle
/// inequality of ||F|| = d(F, 0), the vanishing characterization, and
/// translation invariance of d. All sub-checks use `tol`.
template <class P, class Y>
NormStructureReport norm_structure_check(const MappingMetric<P, Y>& mm,
                                         const MappingHandle<P, Y>& f1,
                                         const MappingHandle<P, Y>& f2,
                                         const MappingHandle<P, Y>& f3,
                                         const std::vector<double>& scalars,
                                         double tol = 1e-12) {
  if (!mm.dY_norm_induced)
    fail(errc::config_invalid, "norm structure needs a norm-induced d_Y");
  NormStructureReport rep;

  const double n1 = mapping_norm(f1, mm).value;
  const double n2 = mapping_norm(f2, mm).value;
  for (double a : scalars) {
    auto e1 = f1.eval;
    MappingHandle<P, Y> af;
    af.eval = [a, e1](const P& x) { return a * e1(x); };
    af.value_at_zero = a * f1.value_at_zero;
    const double na = mapping_norm(af, mm).value;
    rep.homogeneity_defect = std::max(rep.homogeneity_defect, std::abs(na - std::abs(a) * n1));
  }

  auto e1 = f1.eval, e2 = f2.eval, e3 = f3.eval;
  MappingHandle<P, Y> sum;
  sum.eval = [e1, e2](const P& x) { return e1(x) + e2(x); };
  sum.value_at_zero = f1.value_at_zero + f2.value_at_zero;
  rep.triangle_margin = n1 + n2 - mapping_norm(sum, mm).value;

  bool vanishes = mm.dY(f1.value_at_zero, mm.y_zero) == 0.0;
  for (const auto& x : mm.samples.points)
    if (mm.dY(f1.eval(x), mm.y_zero) != 0.0) vanishes = false;
  rep.zero_iff_vanishes = (n1 == 0.0) == vanishes;

  MappingHandle<P, Y> f13, f23;
  f13.eval = [e1, e3](const P& x) { return e1(x) + e3(x); };
  f13.value_at_zero = f1.value_at_zero + f3.value_at_zero;
  f23.eval = [e2, e3](const P& x) { return e2(x) + e3(x); };
  f23.value_at_zero = f2.value_at_zero + f3.value_at_zero;
  rep.translation_defect = std::abs(metric_d(f13, f23, mm).value - metric_d(f1, f2, mm).value);

  rep.holds = rep.homogeneity_defect <= tol && rep.triangle_margin >= -tol &&
              rep.zero_iff_vanishes && rep.translation_defect <= tol;
  return rep;
}

struct CompletenessReport {
  std::vector<double> tail_diameters;  // max over m > n of d(F_n, F_m)
  double final_distance = 0.0;         // d(F_last, limit)
  bool holds = false;
};

/// Corollary 10 on a constructed sequence: the tail diameters must fall
/// below the threshold (otherwise NotCauchy) and the final distance to the
/// declared limit must be below `limit_tol`.
template <class P, class Y>
CompletenessReport completeness_harness(const std::vector<MappingHandle<P, Y>>& seq,
                                        const MappingHandle<P, Y>& limit,
                                        const MappingMetric<P, Y>& mm,
                                        double cauchy_threshold = 1e-6,
                                        double limit_tol = 1e-9) {
  if (seq.size() < 2) fail(errc::empty_samples, "completeness needs at least two members");
  CompletenessReport rep;
  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    double diam = 0.0;
    for (std::size_t m = n + 1; m < seq.size(); ++m)
      diam = std::max(diam, metric_d(seq[n], seq[m], mm).value);
    rep.tail_diameters.push_back(diam);
  }
  if (rep.tail_diameters.back() > cauchy_threshold)
    fail(errc::not_cauchy, "tail diameter " + std::to_string(rep.tail_diameters.back()) +
                               " above threshold");
  rep.final_distance = metric_d(seq.back(), limit, mm).value;
  rep.holds = rep.final_distance < limit_tol;
  return rep;
}

/// Multiplication support for codomain algebras. Scalars and square real
/// matrices are the desk-scale instantiations.
template <class Y>
struct algebra_traits {
  static constexpr bool available = false;
};

template <>
struct algebra_traits<Scalar> {
  static constexpr bool available = true;
  static Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
};

template <>
struct algebra_traits<Mat> {
  static constexpr bool available = true;
  static Mat mul(const Mat& a, const Mat& b) { return a * b; }
};

template <class P, class Y>
struct AlgebraElement {
  MappingHandle<P, Y> map;
  bool unit_flag = false;
};

/// (F1 * F2)(x) = F1(x) F2(x) / d_X(x, 0) for x != 0, F1(0) F2(0) at 0.
template <class P, class Y>
AlgebraElement<P, Y> star_multiply(const AlgebraElement<P, Y>& f1, const AlgebraElement<P, Y>& f2,
                                   const MappingMetric<P, Y>& mm) {
  if constexpr (!algebra_traits<Y>::available) {
    fail(errc::not_algebra, "codomain type has no multiplication");
  } else {
    auto e1 = f1.map.eval, e2 = f2.map.eval;
    auto dX = mm.dX;
    AlgebraElement<P, Y> out;
    out.map.eval = [e1, e2, dX](const P& x) {
      const double dx = dX.to_zero(x);
      const Y prod = algebra_traits<Y>::mul(e1(x), e2(x));
      if (dx == 0.0) return prod;
      return (1.0 / dx) * prod;
    };
    out.map.value_at_zero = algebra_traits<Y>::mul(f1.map.value_at_zero, f2.map.value_at_zero);
    return out;
  }
}

/// e(x) = d_X(x, 0) 1_Y for x != 0 and e(0) = 1_Y; its norm is exactly 1.
template <class P, class Y>
AlgebraElement<P, Y> unit_element(const MappingMetric<P, Y>& mm) {
  if constexpr (!algebra_traits<Y>::available) {
    fail(errc::not_algebra, "codomain type has no multiplication");
  } else {
    if (!mm.y_unit) fail(errc::not_unital, "codomain algebra has no unit configured");
    const Y one = *mm.y_unit;
    auto dX = mm.dX;
    AlgebraElement<P, Y> out;
    out.unit_flag = true;
    out.map.eval = [one, dX](const P& x) {
      const double dx = dX.to_zero(x);
      if (dx == 0.0) return one;
      return dx * one;
    };
    out.map.value_at_zero = one;
    return out;
  }
}

}  // namespace opnorm

#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/opspace.hpp"
#include "opnorm/spaces.hpp"

namespace opnorm {

/// Default scalar ladder for contraction probing: +/- 2^j, j = -3..3.
inline std::vector<double> geometric_scalar_ladder(int lo = -3, int hi = 3) {
  std::vector<double> ks;
  for (int j = lo; j <= hi; ++j) {
    const double v = std::ldexp(1.0, j);
    ks.push_back(v);
    ks.push_back(-v);
  }
  return ks;
}

struct ContractionWitness {
  double scalar = 0.0;
  std::size_t sample = 0;
  double ratio = 0.0;
};

/// Result of sampling the M-contraction inequality ||F(kx)|| <= M|k| ||F(x)||.
/// M_hat is the max of ||F(kx)||/(|k| ||F(x)||) over pairs with F(x) != 0 and
/// is a certified lower bound on any admissible M. finite is false when some
/// sample has F(x) = 0 but F(kx) != 0; that is the NoFiniteM verdict, not an
/// exception.
struct ContractionReport {
  double M_hat = 0.0;
  std::vector<ContractionWitness> witnesses;
  bool finite = true;
  std::vector<ContractionWitness> obstructions;  // F(x) = 0, F(kx) != 0
};

inline ContractionReport estimate_M(const OperatorHandle& f, const SampleSet<Vec>& samples,
                                    const std::vector<double>& scalars) {
  bool any_nonzero = false;
  for (const auto& x : samples.points)
    if (f.domain.norm(x) > 0.0) any_nonzero = true;
  if (!any_nonzero) fail(errc::empty_samples, "estimate_M needs nonzero samples");
  for (double k : scalars)
    if (k == 0.0) fail(errc::config_invalid, "estimate_M scalars must be nonzero");

  ContractionReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec& x = samples.points[i];
    if (f.domain.norm(x) == 0.0) continue;
    const double fx = f.codomain.norm(f.eval(x));
    for (double k : scalars) {
      const double fkx = f.codomain.norm(f.eval(k * x));
      if (fx == 0.0) {
        if (fkx > 0.0) {
          rep.finite = false;
          rep.obstructions.push_back({k, i, fkx});
        }
        continue;
      }
      const double ratio = fkx / (std::abs(k) * fx);
      if (rep.witnesses.empty() || ratio > rep.M_hat + 1e-15) {
        rep.M_hat = std::max(rep.M_hat, ratio);
        rep.witnesses.assign(1, {k, i, ratio});
      } else if (ratio >= rep.M_hat - 1e-15) {
        rep.witnesses.push_back({k, i, ratio});
      }
    }
  }
  return rep;
}

/// Definition 1 evidence: for each radius, the max of ||F(x)|| over samples
/// with ||x|| <= r (a lower bound of the true image bound).
inline std::vector<std::pair<double, double>> check_topology_bounded(
    const OperatorHandle& f, const std::vector<double>& radii,
    const std::function<SampleSet<Vec>(double)>& samples_per_ball) {
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    if (!(r > 0.0)) fail(errc::config_invalid, "radii must be positive");
    const auto s = samples_per_ball(r);
    double image_radius = 0.0;
    for (const auto& x : s.points) {
      if (f.domain.norm(x) > r) continue;
      image_radius = std::max(image_radius, f.codomain.norm(f.eval(x)));
    }
    out.emplace_back(r, image_radius);
  }
  return out;
}

struct Theorem1Report {
  double p_hat = 0.0;
  double k_bar_hat = 0.0;  // max of ||F(u)|| over unit-sphere samples
  double bound = 0.0;      // max(M k_bar_hat, ||F(0)||)
  double M_hat = 0.0;      // over the normalization pairs actually used
  bool holds = false;
};

/// Theorem 1 second direction made constructive. The sample set is closed
/// under normalization x -> x/||x||; the contraction hypothesis is verified
/// on exactly the pairs (x/||x||, k = ||x||) the bound needs, so the final
/// inequality p_hat <= max(M k_bar_hat, ||F(0)||) holds by construction.
inline Theorem1Report theorem1_bound_check(const OperatorHandle& f, double M,
                                           const SampleSet<Vec>& samples, double tol = 1e-12) {
  std::vector<Vec> closed = samples.points;
  closed.push_back(f.domain.zero());
  for (const auto& x : samples.points) {
    const double nx = f.domain.norm(x);
    if (nx > 0.0) closed.push_back((1.0 / nx) * x);
  }
  const auto closure = make_vec_samples(f.domain, std::move(closed), samples.seed);

  Theorem1Report rep;
  for (const auto& x : samples.points) {
    const double nx = f.domain.norm(x);
    if (nx == 0.0) continue;
    const Vec u = (1.0 / nx) * x;
    const double fu = f.codomain.norm(f.eval(u));
    const double fx = f.codomain.norm(f.eval(x));
    // The k = 1 instance of the contraction inequality pins M >= 1 whenever
    // F does not vanish on the sphere.
    if (fu > 0.0) rep.M_hat = std::max({rep.M_hat, fx / (nx * fu), 1.0});
  }
  if (rep.M_hat > M)
    fail(errc::hypothesis_violated,
         "sampled M_hat " + std::to_string(rep.M_hat) + " exceeds claimed M");

  for (const auto& u : closure.points) {
    const double nu = f.domain.norm(u);
    if (std::abs(nu - 1.0) <= 1e-12) rep.k_bar_hat = std::max(rep.k_bar_hat, f.codomain.norm(f.eval(u)));
  }
  rep.p_hat = estimate_norm(f, NormKind::p(), closure).value;
  rep.bound = std::max(M * rep.k_bar_hat, f.codomain.norm(f.value_at_zero));
  rep.holds = rep.p_hat <= rep.bound + tol;
  return rep;
}

/// Variant taking M from the sampled estimate itself; the bound then holds
/// by construction on the closed set.
inline Theorem1Report theorem1_bound_check_auto(const OperatorHandle& f,
                                                const SampleSet<Vec>& samples,
                                                double tol = 1e-12) {
  double m_hat = 0.0;
  for (const auto& x : samples.points) {
    const double nx = f.domain.norm(x);
    if (nx == 0.0) continue;
    const Vec u = (1.0 / nx) * x;
    const double fu = f.codomain.norm(f.eval(u));
    const double fx = f.codomain.norm(f.eval(x));
    if (fu > 0.0) m_hat = std::max({m_hat, fx / (nx * fu), 1.0});
  }
  return theorem1_bound_check(f, m_hat, samples, tol);
}

struct ClosednessReport {
  std::vector<double> distances;  // p_hat(F_n - F_limit)
  double limit_M_hat = 0.0;
  double inflation = 0.0;  // (M max|k| + 1) * final distance
  bool holds = false;
};

/// Theorem 2 as a sequence test: every member is M-contractive on the
/// samples, distances to the declared limit fall below `threshold`, and the
/// limit's sampled M_hat is within the proof-chain inflation of M.
inline ClosednessReport closedness_sequence_test(const std::vector<OperatorHandle>& seq,
                                                 const OperatorHandle& limit, double M,
                                                 const SampleSet<Vec>& samples,
                                                 const std::vector<double>& scalars,
                                                 double threshold = 1e-6, double tol = 1e-12) {
  if (seq.empty()) fail(errc::empty_samples, "closedness test needs a nonempty sequence");
  ClosednessReport rep;
  for (const auto& fn : seq) {
    const auto r = estimate_M(fn, samples, scalars);
    if (r.finite && r.M_hat > M + tol)
      fail(errc::hypothesis_violated, "sequence member has M_hat > M");
    rep.distances.push_back(estimate_norm(op_sub(fn, limit), NormKind::p(), samples).value);
  }
  if (rep.distances.back() > threshold)
    fail(errc::not_converging, "final distance " + std::to_string(rep.distances.back()) +
                                   " above threshold");
  double max_k = 0.0;
  for (double k : scalars) max_k = std::max(max_k, std::abs(k));
  const auto lim = estimate_M(limit, samples, scalars);
  rep.limit_M_hat = lim.M_hat;
  rep.inflation = (M * max_k + 1.0) * rep.distances.back();
  rep.holds = lim.finite && rep.limit_M_hat <= M + rep.inflation + tol;
  return rep;
}

/// Indexed family of operators over shared domain and codomain.
struct FamilyHandle {
  std::vector<OperatorHandle> members;
  std::vector<std::string> labels;
};

inline FamilyHandle make_family(std::vector<OperatorHandle> members,
                                std::vector<std::string> labels = {}) {
  if (members.empty()) fail(errc::empty_samples, "family needs members");
  for (const auto& f : members)
    if (f.domain.dimension != members.front().domain.dimension ||
        f.codomain.dimension != members.front().codomain.dimension)
      fail(errc::space_mismatch, "family members must share spaces");
  if (labels.empty())
    for (std::size_t i = 0; i < members.size(); ++i) labels.push_back("F" + std::to_string(i));
  return FamilyHandle{std::move(members), std::move(labels)};
}

struct DenominatorZeroPair {
  std::size_t member = 0, x1 = 0, x2 = 0;
  double numerator = 0.0;
};

struct UniformBoundednessReport {
  std::vector<double> pointwise_bounds;            // c_x per sample
  double L_hat = 0.0;                              // condition (b) lower estimate
  std::vector<DenominatorZeroPair> denominator_zero;
  std::vector<double> member_norms;                // p_hat per member
  std::vector<double> member_M_hats;
  double uniform_bound = 0.0;
  bool uniformly_bounded = false;  // bound well below extended-real overflow
};

/// Theorem 3 harness. c_x gives condition (a) evidence, L_hat estimates the
/// condition (b) constant from below (pairs with a vanishing denominator are
/// surfaced, not fatal), and uniform_bound is the max sampled p over members.
inline UniformBoundednessReport uniform_boundedness_harness(const FamilyHandle& family,
                                                            const SampleSet<Vec>& samples,
                                                            const std::vector<double>& scalars) {
  if (family.members.empty()) fail(errc::empty_samples, "empty family");
  UniformBoundednessReport rep;
  const auto& dom = family.members.front().domain;
  const auto& cod = family.members.front().codomain;

  for (const auto& x : samples.points) {
    double cx = 0.0;
    for (const auto& f : family.members) cx = std::max(cx, cod.norm(f.eval(x)));
    rep.pointwise_bounds.push_back(cx);
  }

  for (std::size_t m = 0; m < family.members.size(); ++m) {
    const auto& f = family.members[m];
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i; j < samples.size(); ++j) {
        const Vec& x1 = samples.points[i];
        const Vec& x2 = samples.points[j];
        const double num = cod.norm(f.eval(x1 + x2));
        const double den = cod.norm(f.eval(x1) + f.eval(x2));
        if (den == 0.0) {
          if (num > 0.0) rep.denominator_zero.push_back({m, i, j, num});
          continue;
        }
        rep.L_hat = std::max(rep.L_hat, num / den);
      }
    rep.member_norms.push_back(estimate_norm(f, NormKind::p(), samples).value);
    const auto mrep = estimate_M(f, samples, scalars);
    rep.member_M_hats.push_back(mrep.finite ? mrep.M_hat
                                            : std::numeric_limits<double>::infinity());
    rep.uniform_bound = std::max(rep.uniform_bound, rep.member_norms.back());
  }
  (void)dom;
  rep.uniformly_bounded = rep.uniform_bound < 1e15;
  return rep;
}

struct LimitCheckReport {
  std::vector<double> pointwise_distances;  // max over samples per member
  double limit_norm = 0.0;
  double member_norm_max = 0.0;
  double final_defect = 0.0;  // p_hat(F - F_last) on the samples
  std::size_t condition_b_violations = 0;
  bool holds = false;
};

/// Corollary 1: the pointwise limit inherits the sampled bound. The sound
/// form of the assertion carries the convergence defect of the last member:
/// p_hat(F) <= max_n p_hat(F_n) + p_hat(F - F_last).
inline LimitCheckReport corollary1_limit_check(const std::vector<OperatorHandle>& seq,
                                               const OperatorHandle& f,
                                               const SampleSet<Vec>& samples, double L,
                                               double threshold = 1e-6, double tol = 1e-12) {
  if (seq.empty()) fail(errc::empty_samples, "limit check needs a nonempty sequence");
  LimitCheckReport rep;
  const auto& cod = f.codomain;
  for (const auto& fn : seq) {
    double d = 0.0;
    for (const auto& x : samples.points) d = std::max(d, cod.norm(fn.eval(x) - f.eval(x)));
    rep.pointwise_distances.push_back(d);
    rep.member_norm_max = std::max(rep.member_norm_max,
                                   estimate_norm(fn, NormKind::p(), samples).value);
    for (std::size_t i = 0; i < samples.size(); ++i)
      for (std::size_t j = i; j < samples.size(); ++j) {
        const Vec& x1 = samples.points[i];
        const Vec& x2 = samples.points[j];
        if (cod.norm(fn.eval(x1 + x2)) > L * cod.norm(fn.eval(x1) + fn.eval(x2)) + tol)
          ++rep.condition_b_violations;
      }
  }
  if (rep.pointwise_distances.back() > threshold)
    fail(errc::not_converging, "pointwise distances do not fall below threshold");
  rep.final_defect = estimate_norm(op_sub(f, seq.back()), NormKind::p(), samples).value;
  rep.limit_norm = estimate_norm(f, NormKind::p(), samples).value;
  rep.holds = rep.limit_norm <= rep.member_norm_max + rep.final_defect + tol;
  return rep;
}

}  // namespace opnorm

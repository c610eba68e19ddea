#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/errors.hpp"
#include "opnorm/metricmaps.hpp"
#include "opnorm/opspace.hpp"
#include "opnorm/quadrature.hpp"
#include "opnorm/testfn.hpp"

namespace opnorm {

/// Kernel of an integral functional Lambda_m, with its L1 norm computed and
/// error-bounded at construction.
struct IntegralKernel {
  std::function<Scalar(double)> m;
  double lo = 0.0, hi = 1.0;
  QuadOptions quad{1e-9, 400000};
  double l1_norm = 0.0;
  double l1_error = 0.0;
};

inline IntegralKernel make_integral_kernel(std::function<Scalar(double)> m, double lo, double hi,
                                           QuadOptions quad = {1e-9, 400000}) {
  IntegralKernel k;
  k.m = std::move(m);
  k.lo = lo;
  k.hi = hi;
  k.quad = quad;
  auto fn = k.m;
  const auto res = integrate_real([fn](double t) { return std::abs(fn(t)); }, lo, hi, quad);
  k.l1_norm = res.real();
  k.l1_error = res.error_bound;
  if (k.l1_error > 1e-6 * (1.0 + k.l1_norm))
    fail(errc::quadrature_budget_exceeded, "kernel L1 error bound too large");
  return k;
}

/// Functional on test functions: delta_c, the derivative deltas, Lambda_m,
/// or a user-supplied evaluator.
struct FunctionalHandle {
  enum class Label { delta, deriv_delta, integral, user } label = Label::user;
  std::function<Scalar(const TestFunction&)> eval;
  RVec point;                              // c for delta
  MultiIndex index;                        // k for deriv_delta
  std::shared_ptr<IntegralKernel> kernel;  // for integral

  Scalar operator()(const TestFunction& f) const { return eval(f); }
};

inline Scalar eval_delta(const RVec& c, const TestFunction& f) { return f.eval(c); }

/// delta^(k)(f) = (-1)^{|k|} f^(k)(0).
inline Scalar eval_deriv_delta(const MultiIndex& k, const TestFunction& f) {
  if (multi_order(k) > f.max_order)
    fail(errc::order_exceeds_oracle, "derivative delta beyond the oracle order");
  const double sign = (multi_order(k) % 2 == 0) ? 1.0 : -1.0;
  return sign * f.deriv(k, RVec(f.dim, 0.0));
}

struct LambdaValue {
  Scalar value{0.0, 0.0};
  double error_bound = 0.0;
};

/// Lambda_m(f) by quadrature of m * f over the intersection of supports.
inline LambdaValue eval_lambda_m(const IntegralKernel& kernel, const TestFunction& f) {
  if (f.dim != 1) fail(errc::config_invalid, "integral functionals are one-dimensional here");
  double lo = kernel.lo, hi = kernel.hi;
  if (f.support) {
    lo = std::max(lo, f.support->lo[0]);
    hi = std::min(hi, f.support->hi[0]);
  }
  if (lo >= hi) return {};
  auto m = kernel.m;
  auto fd = f.deriv;
  const auto res = integrate(
      [m, fd](double t) { return m(t) * fd(MultiIndex{0}, RVec{t}); }, lo, hi, kernel.quad);
  return {res.value, res.error_bound};
}

inline FunctionalHandle delta_functional(const RVec& c) {
  FunctionalHandle h;
  h.label = FunctionalHandle::Label::delta;
  h.point = c;
  h.eval = [c](const TestFunction& f) { return eval_delta(c, f); };
  return h;
}

inline FunctionalHandle deriv_delta_functional(const MultiIndex& k) {
  FunctionalHandle h;
  h.label = FunctionalHandle::Label::deriv_delta;
  h.index = k;
  h.eval = [k](const TestFunction& f) { return eval_deriv_delta(k, f); };
  return h;
}

inline FunctionalHandle integral_functional(IntegralKernel kernel) {
  FunctionalHandle h;
  h.label = FunctionalHandle::Label::integral;
  h.kernel = std::make_shared<IntegralKernel>(std::move(kernel));
  auto kp = h.kernel;
  h.eval = [kp](const TestFunction& f) { return eval_lambda_m(*kp, f).value; };
  return h;
}

inline FunctionalHandle zero_functional() {
  FunctionalHandle h;
  h.label = FunctionalHandle::Label::user;
  h.eval = [](const TestFunction&) { return Scalar{0.0, 0.0}; };
  return h;
}

/// Extra evaluation points a functional pins inside the seminorm grids, so
/// the certified ratio chains (|f(c)| <= p_N etc.) close on the sampled side.
inline std::vector<RVec> functional_anchor_points(const FunctionalHandle& fun) {
  std::vector<RVec> pts;
  switch (fun.label) {
    case FunctionalHandle::Label::delta:
      pts.push_back(fun.point);
      break;
    case FunctionalHandle::Label::deriv_delta:
      pts.push_back(RVec(std::max<std::size_t>(fun.index.size(), 1), 0.0));
      break;
    case FunctionalHandle::Label::integral: {
      const int count = 129;
      for (int i = 0; i < count; ++i)
        pts.push_back({fun.kernel->lo +
                       (fun.kernel->hi - fun.kernel->lo) * static_cast<double>(i) / (count - 1)});
      break;
    }
    case FunctionalHandle::Label::user:
      break;
  }
  return pts;
}

struct FunctionalNormResult {
  NormEstimate lower;           // max ratio against the upper-certified denominator
  std::vector<double> ratios;   // per probe, against the truncated denominator
  std::optional<double> upper;  // analytic upper bound when a chain applies
  std::string upper_reason;
  std::string variant;  // "d_Cinf" or "d_DOmega"
};

/// Sandwich estimate of ||Lambda|| in B_d: a certified sampled lower bound
/// (denominators are upper-certified metric values where available) plus the
/// Example 1 analytic upper bounds for the built-in functionals. A missing
/// chain downgrades to lower-bound-only rather than failing.
inline FunctionalNormResult functional_norm(const FunctionalHandle& fun,
                                            const std::vector<TestFunction>& family,
                                            const FrechetMetricParams& params) {
  if (family.empty()) fail(errc::empty_samples, "functional_norm needs probe functions");
  FunctionalNormResult out;
  out.variant = params.whole_domain ? "d_DOmega" : "d_Cinf";

  const auto anchors = functional_anchor_points(fun);
  const auto zero = zero_test_function(family.front().dim);
  double best_lower = 0.0;
  std::optional<std::size_t> witness;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    const double num = std::abs(fun.eval(f));
    const auto den = frechet_metric(f, zero, params, anchors);
    if (den.value == 0.0) {
      out.ratios.push_back(0.0);
      continue;
    }
    out.ratios.push_back(num / den.value);
    double certified = 0.0;
    if (f.dim == 1 && params.truncation + 3 <= f.max_order) {
      certified = num / frechet_metric_upper(f, zero, params, anchors);
    } else {
      certified = num / den.value;  // not upper-certified; noted below
    }
    if (certified > best_lower) {
      best_lower = certified;
      witness = i;
    }
  }
  out.lower.value = best_lower;
  out.lower.kind = NormKind::p();
  out.lower.certificate = CertificateKind::sampled_lower_bound;
  out.lower.sample_count = family.size();
  out.lower.witness = witness;

  const Box& kn = exhaustion_box(params, params.N);
  const Box& region = params.whole_domain ? params.omega : kn;
  switch (fun.label) {
    case FunctionalHandle::Label::delta:
      if (region.contains(fun.point)) {
        out.upper = 1.0;
        out.upper_reason = "|f(c)| <= p_N(f) <= d(f,0) with c in the region";
      } else {
        out.upper_reason = "NoUpperBoundAvailable: c outside the region";
      }
      break;
    case FunctionalHandle::Label::deriv_delta:
      if (multi_order(fun.index) <= params.N &&
          region.contains(RVec(std::max<std::size_t>(fun.index.size(), 1), 0.0))) {
        out.upper = 1.0;
        out.upper_reason = "|f^(k)(0)| <= p_N(f) <= d(f,0) with |k| <= N, 0 in the region";
      } else {
        out.upper_reason = "NoUpperBoundAvailable: |k| > N or 0 outside the region";
      }
      break;
    case FunctionalHandle::Label::integral: {
      const bool inside = fun.kernel->lo >= region.lo[0] && fun.kernel->hi <= region.hi[0];
      if (inside || params.whole_domain) {
        out.upper = fun.kernel->l1_norm + fun.kernel->l1_error;
        out.upper_reason = "|Lambda_m(f)| <= p_N(f) ||m||_L1 <= d(f,0) ||m||_L1";
      } else {
        out.upper_reason = "NoUpperBoundAvailable: supp m not inside K_N";
      }
      break;
    }
    case FunctionalHandle::Label::user:
      out.upper_reason = "NoUpperBoundAvailable: no chain for user functionals";
      break;
  }
  return out;
}

/// Example 2(a): F(Lambda)(phi) = Lambda(x phi).
inline FunctionalHandle position_operator(const FunctionalHandle& lam) {
  FunctionalHandle out;
  out.label = FunctionalHandle::Label::user;
  auto le = lam.eval;
  out.eval = [le](const TestFunction& phi) { return le(tf_poly_mul(Poly{0.0, 1.0}, phi)); };
  return out;
}

/// Example 2(b): F(Lambda)(phi) = (-1)^alpha Lambda(phi^(alpha)).
inline FunctionalHandle momentum_operator(const FunctionalHandle& lam, int alpha) {
  if (alpha < 1) fail(errc::config_invalid, "momentum operator needs a positive order");
  FunctionalHandle out;
  out.label = FunctionalHandle::Label::user;
  auto le = lam.eval;
  out.eval = [le, alpha](const TestFunction& phi) {
    const double sign = (alpha % 2 == 0) ? 1.0 : -1.0;
    return sign * le(tf_derivative(phi, MultiIndex{alpha}));
  };
  return out;
}

/// The triangle-ramp witness lambda_n(t) = n (t - c) on [c, c + 1/n].
struct RampWitness {
  int n = 4;
  double c = 0.0;

  double l1_norm() const { return 1.0 / (2.0 * n); }  // exact triangle area
  double lo() const { return c; }
  double hi() const { return c + 1.0 / n; }
};

inline IntegralKernel ramp_kernel(const RampWitness& w) {
  const double n = w.n, c = w.c;
  IntegralKernel k;
  k.m = [n, c](double t) { return Scalar{n * (t - c), 0.0}; };
  k.lo = w.lo();
  k.hi = w.hi();
  k.quad = QuadOptions{1e-12, 400000};
  k.l1_norm = w.l1_norm();
  k.l1_error = 0.0;  // closed form
  return k;
}

struct WitnessSearchStep {
  double center = 0.0, width = 0.0, value = 0.0;
};

struct WitnessRatioResult {
  double numerator_lb = 0.0;       // certified lower bound of ||F(Lambda_n)||
  double denominator_ub = 0.0;     // exact ||lambda_n||_L1 = 1/(2n)
  double certified_ratio = 0.0;    // numerator_lb / denominator_ub
  bool attained_2n = false;        // whether numerator_lb reached 1
  std::size_t witness_probe = 0;
  std::vector<WitnessSearchStep> trace;
};

namespace detail {

/// |F(Lambda_n)(phi)| with a certified floor: quadrature value minus its
/// error bound. The integrand vanishes outside the probe's support, so the
/// integration window is the intersection (narrow probes stay resolved).
inline double witness_numerator(const RampWitness& w, const TestFunction& phi) {
  double lo = w.lo(), hi = w.hi();
  if (phi.support) {
    lo = std::max(lo, phi.support->lo[0]);
    hi = std::min(hi, phi.support->hi[0]);
    if (lo >= hi) return 0.0;
  }
  auto fd = phi.deriv;
  const double n = w.n, c = w.c;
  const auto res = integrate(
      [fd, n, c](double t) { return n * (t - c) * fd(MultiIndex{1}, RVec{t}); }, lo, hi,
      QuadOptions{1e-12, 400000});
  return std::max(0.0, std::abs(res.value) - res.error_bound);
}

inline double witness_objective(const RampWitness& w, const TestFunction& phi,
                                const FrechetMetricParams& params) {
  const double num = witness_numerator(w, phi);
  if (num == 0.0) return 0.0;
  const double den = frechet_metric_upper(phi, zero_test_function(1), params);
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace detail

/// Certified ratio ||F(Lambda_n)|| / ||Lambda_n|| >= numerator_lb / (1/(2n)).
/// The numerator maximizes |F(Lambda_n)(phi)| / d_upper(phi, 0) over the
/// probe family; the denominator bound is the closed-form L1 norm from the
/// paper chain |Lambda_n(f)| <= p_N(f) ||lambda_n||_L1 <= d(f,0) ||lambda_n||_L1.
inline WitnessRatioResult momentum_witness_ratio(const RampWitness& w,
                                                 const std::vector<TestFunction>& probes,
                                                 const FrechetMetricParams& params) {
  const Box& kn = exhaustion_box(params, params.N);
  if (!(kn.lo[0] <= w.lo() && w.hi() <= kn.hi[0]))
    fail(errc::support_not_covered, "K_N does not contain [c, c + 1/n]");
  if (probes.empty()) fail(errc::empty_samples, "witness ratio needs probes");

  WitnessRatioResult out;
  out.denominator_ub = w.l1_norm();
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double v = detail::witness_objective(w, probes[i], params);
    if (v > out.numerator_lb) {
      out.numerator_lb = v;
      out.witness_probe = i;
    }
  }
  out.certified_ratio = out.numerator_lb / out.denominator_ub;
  out.attained_2n = out.numerator_lb >= 1.0;
  return out;
}

/// Coordinate search over bump (center, width) inside the ramp interval of
/// the smallest-n witness; the returned family is shared across a whole
/// n-ladder so the per-n ratios stay comparable. The search trace is kept.
inline std::pair<std::vector<TestFunction>, std::vector<WitnessSearchStep>>
optimize_witness_probes(const RampWitness& w, const FrechetMetricParams& params,
                        int rounds = 2) {
  const double len = 1.0 / w.n;
  std::vector<TestFunction> family;
  std::vector<WitnessSearchStep> trace;

  auto probe = [&](double center, double width) {
    return bump_function(BumpFamily{{center}, width, {1.0, 0.0}});
  };
  double best_center = w.c + 0.5 * len;
  double best_width = 0.25 * len;
  double best_value = detail::witness_objective(w, probe(best_center, best_width), params);
  trace.push_back({best_center, best_width, best_value});

  for (int round = 0; round < rounds; ++round) {
    const double cspan = 0.25 * len / (round + 1);
    for (int i = -3; i <= 3; ++i) {
      const double c = best_center + cspan * i / 3.0;
      const double maxw = std::min(c - w.c, w.hi() - c);
      if (maxw <= 1e-9) continue;
      const double wid = std::min(best_width, 0.95 * maxw);
      const double v = detail::witness_objective(w, probe(c, wid), params);
      trace.push_back({c, wid, v});
      if (v > best_value) {
        best_value = v;
        best_center = c;
        best_width = wid;
      }
    }
    const double maxw = std::min(best_center - w.c, w.hi() - best_center);
    for (int i = -3; i <= 3; ++i) {
      const double wid = best_width * std::pow(2.0, i / 3.0);
      if (wid <= 1e-9 || wid > 0.95 * maxw) continue;
      const double v = detail::witness_objective(w, probe(best_center, wid), params);
      trace.push_back({best_center, wid, v});
      if (v > best_value) {
        best_value = v;
        best_width = wid;
      }
    }
  }

  family.push_back(probe(best_center, best_width));
  family.push_back(probe(w.c + 0.5 * len, 0.45 * len));
  family.push_back(probe(w.c + 0.5 * len, 0.2 * len));
  return {family, trace};
}

/// (Lambda * Lambda)(f) = Lambda(f)^2 / d(f, 0), Lambda(0)^2 at the zero
/// function; the Corollary 12 square in the B_d[D(Omega), C] algebra.
inline FunctionalHandle star_square(const FunctionalHandle& lam,
                                    const FrechetMetricParams& params) {
  FunctionalHandle out;
  out.label = FunctionalHandle::Label::user;
  auto le = lam.eval;
  out.eval = [le, params](const TestFunction& f) {
    const Scalar v = le(f);
    const double d = frechet_metric(f, zero_test_function(f.dim), params).value;
    if (d == 0.0) return v * v;
    return v * v / d;
  };
  return out;
}

/// The mapping-metric instantiation over test functions, for cross-module
/// checks against `metricmaps`.
inline MappingMetric<TestFunction, Scalar> testfunction_mapping_metric(
    const FrechetMetricParams& params, std::vector<TestFunction> probes) {
  MappingMetric<TestFunction, Scalar> mm;
  mm.dX.zero = zero_test_function(probes.empty() ? 1 : probes.front().dim);
  mm.dX.translation_invariant = true;
  mm.dX.eval = [params](const TestFunction& f, const TestFunction& g) {
    return frechet_metric(f, g, params).value;
  };
  mm.dY = [](const Scalar& a, const Scalar& b) { return std::abs(a - b); };
  mm.dY_norm_induced = true;
  mm.y_zero = Scalar{0.0, 0.0};
  mm.y_unit = Scalar{1.0, 0.0};
  auto dX = mm.dX;
  mm.samples = make_sample_set(
      std::move(probes), [dX](const TestFunction& f) { return dX.to_zero(f); },
      [](const TestFunction&, const TestFunction&) { return false; });
  return mm;
}

}  // namespace opnorm

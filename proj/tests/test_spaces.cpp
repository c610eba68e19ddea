#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "opnorm/rng.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/testfn.hpp"

using namespace opnorm;

TEST_CASE("finite space norms: homogeneity and triangle inequality") {
  Rng rng(101);
  for (int kind = 0; kind < 4; ++kind) {
    const FiniteSpace space =
        kind == 3 ? make_space(3, NormFamily::weighted, ScalarField::real, {0.5, 1.5, 2.0})
                  : make_space(3, static_cast<NormFamily>(kind));
    REQUIRE(space.norm(space.zero()) == 0.0);
    for (int i = 0; i < 50; ++i) {
      Vec u(3), v(3);
      for (int d = 0; d < 3; ++d) {
        u[d] = Scalar{rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0)};
        v[d] = Scalar{rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0)};
      }
      const Scalar alpha = 2.5 * rng.unit_complex();
      CHECK(std::abs(space.norm(alpha * v) - std::abs(alpha) * space.norm(v)) <= 1e-12);
      CHECK(space.norm(u + v) <= space.norm(u) + space.norm(v) + 1e-12);
    }
  }
}

TEST_CASE("weighted norm validation") {
  CHECK_THROWS_AS(make_space(2, NormFamily::weighted, ScalarField::real, {1.0}), error);
  CHECK_THROWS_AS(make_space(2, NormFamily::weighted, ScalarField::real, {1.0, 0.0}), error);
  CHECK_THROWS_AS(make_space(0), error);
}

TEST_CASE("inner product space basis validation") {
  CHECK_NOTHROW(make_inner_product_space(2, {real_vec({1.0, 0.0}), real_vec({0.0, 1.0})}));
  CHECK_THROWS_AS(make_inner_product_space(2, {real_vec({1.0, 0.0}), real_vec({1.0, 0.0})}),
                  error);
  const auto s = make_inner_product_space(3);
  CHECK(s.inner(s.basis_vector(0), s.basis_vector(1)) == Scalar{0.0, 0.0});
  CHECK(s.norm(s.basis_vector(2)) == 1.0);
}

TEST_CASE("sample sets dedupe and record metadata") {
  const auto space = make_space(2, NormFamily::ell2);
  const auto s = make_vec_samples(
      space, {real_vec({1.0, 0.0}), real_vec({1.0, 0.0}), real_vec({0.0, 0.0}),
              real_vec({0.0, 0.5})},
      7);
  CHECK(s.size() == 3);
  CHECK(s.contains_zero);
  CHECK(s.min_nonzero_norm == 0.5);
  CHECK(s.seed == 7);
}

TEST_CASE("ball samples are deterministic and contain the origin") {
  const auto space = make_space(3, NormFamily::ell2);
  const auto a = ball_samples(space, 16, 2.0, 99);
  const auto b = ball_samples(space, 16, 2.0, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points[i] == b.points[i]);
  CHECK(a.contains_zero);
  for (const auto& p : a.points) CHECK(space.norm(p) <= 2.0 + 1e-12);
}

TEST_CASE("translation invariance of norm-induced metrics") {
  const auto space = make_space(2, NormFamily::ell2);
  const auto d = norm_metric(space);
  const auto probes = ball_samples(space, 8, 2.0, 3);
  const auto shifts = ball_samples(space, 4, 1.0, 4);
  const auto rep = check_translation_invariance(d, probes, shifts, 1e-12);
  CHECK(rep.confirmed);
  CHECK(rep.max_discrepancy <= 1e-12);
}

TEST_CASE("a non translation invariant metric is detected") {
  // d(x, y) = |x - y| / (1 + |x|) on the probe/shift triple from its spec:
  // the (x, y, s) = (0, 1, 1) triple gives |d(1,2) - d(0,1)| = 0.5.
  const auto space = make_space(1, NormFamily::ell2);
  MetricDescriptor<Vec> d;
  d.zero = space.zero();
  d.eval = [](const Vec& a, const Vec& b) {
    return std::abs(a[0] - b[0]) / (1.0 + std::abs(a[0]));
  };
  const auto probes = make_vec_samples(space, {real_vec({0.0}), real_vec({1.0})});
  const auto shifts = make_vec_samples(space, {real_vec({1.0})});
  const auto rep = check_translation_invariance(d, probes, shifts);
  CHECK_FALSE(rep.confirmed);
  CHECK(rep.max_discrepancy == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("function-space metric depends only on the difference") {
  const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
  MetricDescriptor<TestFunction> d;
  d.zero = zero_test_function(1);
  d.eval = [params](const TestFunction& f, const TestFunction& g) {
    return frechet_metric(f, g, params).value;
  };
  std::vector<TestFunction> probes = {bump_function(BumpFamily{{0.0}, 1.0, {1.0, 0.0}}),
                                      bump_function(BumpFamily{{0.5}, 0.8, {-0.7, 0.0}})};
  std::vector<TestFunction> shifts = {bump_function(BumpFamily{{-0.3}, 0.6, {0.4, 0.0}})};
  auto dist0 = [&](const TestFunction& f) { return d.to_zero(f); };
  auto no_eq = [](const TestFunction&, const TestFunction&) { return false; };
  const auto rep = check_translation_invariance(
      d, make_sample_set(probes, dist0, no_eq), make_sample_set(shifts, dist0, no_eq), 1e-12);
  CHECK(rep.confirmed);
}

TEST_CASE("scale constants of norm-induced metrics equal |alpha|") {
  const auto space = make_space(2, NormFamily::ell1);
  const auto d = norm_metric(space);
  const auto probes = ball_samples(space, 12, 3.0, 11);
  const auto est = estimate_scale_constants(d, probes, {3.0, 1.0, -2.0, 0.25});
  REQUIRE(est.size() == 4);
  CHECK(est[0].c_hat == Catch::Approx(3.0).margin(1e-12));
  CHECK(est[1].c_hat == 1.0);
  CHECK(est[2].c_hat == Catch::Approx(2.0).margin(1e-12));
  CHECK(est[3].c_hat == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("scale constants of a capped metric") {
  // d(x, y) = min(|x - y|, 1), single probe 0.1, alpha = 100:
  // C_hat = min(10, 1) / 0.1 = 10.
  const auto space = make_space(1, NormFamily::ell2);
  MetricDescriptor<Vec> d;
  d.zero = space.zero();
  d.eval = [](const Vec& a, const Vec& b) { return std::min(std::abs(a[0] - b[0]), 1.0); };
  const auto probes = make_vec_samples(space, {real_vec({0.1})});
  const auto est = estimate_scale_constants(d, probes, {100.0});
  CHECK(est[0].c_hat == Catch::Approx(10.0).margin(1e-12));
}

TEST_CASE("degenerate probes are rejected") {
  const auto space = make_space(1, NormFamily::ell2);
  const auto d = norm_metric(space);
  const auto probes = make_vec_samples(space, {space.zero()});
  CHECK_THROWS_AS(estimate_scale_constants(d, probes, {2.0}), error);
  try {
    estimate_scale_constants(d, probes, {2.0});
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_probe);
  }
}

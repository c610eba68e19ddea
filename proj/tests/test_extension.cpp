#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "opnorm/extension.hpp"
#include "opnorm/rng.hpp"

using namespace opnorm;

TEST_CASE("pairwise inequality check") {
  const auto r2 = make_space(2, NormFamily::ell1);
  const auto p = scaled_norm_functional(r2, 1.0);

  SECTION("antipodal unit pair against ell1 has margin 0") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0}), real_vec({-1.0, 0.0})},
                                           {1.0, -1.0});
    const auto rep = check_pairwise_inequality(f, p, PairMode::strict_pairs);
    CHECK(rep.worst_margin == 0.0);
    CHECK(rep.passed);
  }
  SECTION("the zero functional passes with nonnegative margins") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0}), real_vec({0.0, 2.0})},
                                           {0.0, 0.0});
    const auto rep = check_pairwise_inequality(f, p, PairMode::all_pairs);
    CHECK(rep.passed);
    CHECK(rep.worst_margin >= 0.0);
  }
  SECTION("equal pairs catch over-large singleton values") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0})}, {2.0});
    const auto rep = check_pairwise_inequality(f, p, PairMode::all_pairs);
    CHECK(rep.worst_margin == -2.0);  // p(2, 0) - 4
    CHECK_FALSE(rep.passed);
    // In strict mode a singleton domain has nothing to check.
    CHECK(check_pairwise_inequality(f, p, PairMode::strict_pairs).passed);
  }
}

TEST_CASE("one-point extension constant and value") {
  const auto r2 = make_space(2, NormFamily::ell1);
  const auto p = scaled_norm_functional(r2, 1.0);

  SECTION("antipodal pair extended to (0, 1)") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0}), real_vec({-1.0, 0.0})},
                                           {1.0, -1.0});
    const auto step = extend_one_point(f, p, real_vec({0.0, 1.0}));
    CHECK(step.c == -1.0);  // max(1 - 2, -1 - 2)
    CHECK(step.extended.values.back() == 1.0);
    const auto post = check_pairwise_inequality(step.extended, p, PairMode::strict_pairs);
    CHECK(post.passed);
    CHECK(post.worst_margin == 0.0);  // pair ((1,0),(0,1)): 2 <= 2
  }
  SECTION("singleton zero domain uses the single-term max") {
    const auto f = make_partial_functional({r2.zero()}, {0.0});
    const auto step = extend_one_point(f, p, real_vec({1.0, 0.0}));
    CHECK(step.c == -1.0);
    CHECK(step.extended.values.back() == 1.0);  // F(0) + F(y) = 1 <= p(y) = 1
  }
  SECTION("doubled dominating functional") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0})}, {1.0});
    const auto p2 = scaled_norm_functional(r2, 2.0);
    const auto step = extend_one_point(f, p2, real_vec({0.0, 1.0}));
    CHECK(step.c == -3.0);  // 1 - 2*2
    CHECK(step.extended.values.back() == 3.0);  // 1 + 3 = 4 <= 2*ell1(1,1)
  }
  SECTION("errors: reinserted point and failed precheck") {
    const auto f = make_partial_functional({real_vec({1.0, 0.0})}, {5.0});
    try {
      extend_one_point(f, p, real_vec({1.0, 0.0}));
      FAIL("expected PointInDomain");
    } catch (const error& e) {
      CHECK(e.code() == errc::point_in_domain);
    }
    try {
      extend_one_point(f, p, real_vec({0.0, 1.0}), PairMode::all_pairs);
      FAIL("expected PrecheckFailed");
    } catch (const error& e) {
      CHECK(e.code() == errc::precheck_failed);
    }
  }
}

TEST_CASE("iterated extension over target lists") {
  const auto r3 = make_space(3, NormFamily::ell1);
  const auto p = scaled_norm_functional(r3, 1.0);
  const auto f = make_partial_functional(
      {real_vec({1.0, 0.0, 0.0}), real_vec({-1.0, 0.0, 0.0})}, {1.0, -1.0});

  SECTION("an empty target list leaves the functional unchanged") {
    const auto out = extend_over_set(f, p, {});
    CHECK(out.size() == f.size());
  }
  SECTION("two orthogonal targets keep all pair margins nonnegative") {
    const auto out =
        extend_over_set(f, p, {real_vec({0.0, 1.0, 0.0}), real_vec({0.0, 0.0, 1.0})});
    CHECK(out.size() == 4);
    CHECK(check_pairwise_inequality(out, p, PairMode::strict_pairs).passed);
  }
}

TEST_CASE("seeded random extensions always pass the post-check") {
  Rng rng(505);
  const auto space = make_space(3, NormFamily::weighted, ScalarField::real, {1.0, 2.0, 0.5});
  const auto p = scaled_norm_functional(space, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    // Values of a p-dominated linear functional minus nonnegative slack.
    Vec w(3);
    for (int d = 0; d < 3; ++d)
      w[d] = Scalar{rng.uniform(-0.9, 0.9) * (d == 0 ? 1.0 : d == 1 ? 2.0 : 0.5), 0.0};
    std::vector<Vec> pts{space.zero()};
    std::vector<double> vals{0.0};
    for (int k = 0; k < 5; ++k) {
      Vec x(3);
      for (int d = 0; d < 3; ++d) x[d] = Scalar{rng.uniform(-2.0, 2.0), 0.0};
      if (make_partial_functional(pts, vals).find(x)) continue;
      pts.push_back(x);
      double v = 0.0;
      for (int d = 0; d < 3; ++d) v += w[d].real() * x[d].real();
      vals.push_back(v - rng.uniform(0.0, 0.4));
    }
    auto f = make_partial_functional(pts, vals);
    std::vector<Vec> targets;
    for (int k = 0; k < 100; ++k) {
      Vec y(3);
      for (int d = 0; d < 3; ++d) y[d] = Scalar{rng.uniform(-3.0, 3.0), 0.0};
      if (!f.find(y)) targets.push_back(y);
    }
    const auto out = extend_over_set(f, p, targets, PairMode::all_pairs);
    const auto post = check_pairwise_inequality(out, p, PairMode::all_pairs);
    REQUIRE(post.passed);
    // Corollary 2 proof step: 2 F(x) <= p(2x) at every extended point.
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(2.0 * out.values[i] <= p.eval(2.0 * out.points[i]) + 1e-12);
  }
}

TEST_CASE("positive/negative-part extension") {
  const auto r1 = make_space(1, NormFamily::ell2);

  SECTION("the zero functional extends to zero with trivial bounds") {
    const auto f = make_partial_functional({r1.zero(), real_vec({1.0})}, {0.0, 0.0});
    const auto ext = extend_posneg(f, 1.0, 1.0, {real_vec({0.5})}, r1);
    CHECK(ext.holds);
    for (double v : ext.extended.values) CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
  SECTION("a feasible one-sided instance satisfies both displays") {
    const auto f =
        make_partial_functional({r1.zero(), real_vec({1.0}), real_vec({2.0})}, {0.0, 0.4, -0.3});
    const auto ext =
        extend_posneg(f, 1.0, 1.0, {real_vec({0.5}), real_vec({3.0})}, r1);
    CHECK(ext.holds);
    CHECK(ext.worst_pair_margin >= -1e-12);
    CHECK(ext.worst_point_margin >= -1e-12);
  }
  SECTION("sign flip swaps the parts and negates the extension") {
    const auto f =
        make_partial_functional({r1.zero(), real_vec({1.0}), real_vec({2.0})}, {0.0, 0.4, -0.3});
    auto neg = f;
    for (auto& v : neg.values) v = -v;
    const std::vector<Vec> targets{real_vec({0.5}), real_vec({3.0})};
    const auto a = extend_posneg(f, 1.0, 1.0, targets, r1);
    const auto b = extend_posneg(neg, 1.0, 1.0, targets, r1);
    REQUIRE(a.extended.size() == b.extended.size());
    for (std::size_t i = 0; i < a.extended.size(); ++i) {
      CHECK(a.plus.values[i] == b.minus.values[i]);
      CHECK(a.extended.values[i] == -b.extended.values[i]);
    }
  }
  SECTION("F(s) = s on {-1, 0, 1} violates the part-wise hypothesis") {
    // F+(1) + F+(-1) = 1 > M1 ||1 + (-1)|| = 0, so the hypothesis of the
    // positive/negative-part corollary cannot hold on symmetric domains
    // with sign-changing values.
    const auto f = make_partial_functional(
        {real_vec({-1.0}), r1.zero(), real_vec({1.0})}, {-1.0, 0.0, 1.0});
    try {
      extend_posneg(f, 1.0, 1.0, {real_vec({0.5})}, r1);
      FAIL("expected PrecheckFailed");
    } catch (const error& e) {
      CHECK(e.code() == errc::precheck_failed);
    }
  }
  SECTION("outside a common cone the recombined display can fail") {
    // Hypothesis-satisfying witness: F = 1 only at 1.01 with a target near
    // -1.005 forces F(-1.005) ~ -1 while the pair (1, -1.005) demands a
    // value near 0; the harness reports the violation honestly.
    const auto f = make_partial_functional(
        {r1.zero(), real_vec({1.0}), real_vec({1.01})}, {0.0, 0.0, 1.0});
    const auto ext = extend_posneg(f, 1.0, 1.0, {real_vec({-1.005})}, r1);
    CHECK_FALSE(ext.holds);
    CHECK(ext.worst_pair_margin < -0.9);
  }
}

TEST_CASE("componentwise complex extension") {
  const auto r2 = make_space(2, NormFamily::ell1);
  const auto p = scaled_norm_functional(r2, 1.0);
  const auto fr = make_partial_functional({real_vec({1.0, 0.0}), real_vec({-1.0, 0.0})},
                                          {1.0, -1.0});
  const auto fc_zero = make_partial_functional({real_vec({1.0, 0.0}), real_vec({-1.0, 0.0})},
                                               {0.0, 0.0});
  const std::vector<Vec> targets{real_vec({0.0, 1.0}), real_vec({0.0, -2.0})};

  SECTION("a vanishing imaginary part reduces to the real case") {
    const auto out = extend_complex(fr, fc_zero, p, p, targets);
    const auto real_only = extend_over_set(fr, p, targets);
    for (std::size_t i = 0; i < out.real_part.size(); ++i)
      CHECK(out.real_part.values[i] == real_only.values[i]);
    CHECK(check_pairwise_inequality(out.imag_part, p, PairMode::strict_pairs).passed);
  }
  SECTION("both parts pass their conclusions") {
    const auto out = extend_complex(fr, fr, p, p, targets);
    CHECK(check_pairwise_inequality(out.real_part, p, PairMode::strict_pairs).passed);
    CHECK(check_pairwise_inequality(out.imag_part, p, PairMode::strict_pairs).passed);
  }
  SECTION("permuting targets may move values but keeps the inequalities") {
    const std::vector<Vec> swapped{targets[1], targets[0]};
    const auto out = extend_complex(fr, fc_zero, p, p, swapped);
    CHECK(check_pairwise_inequality(out.real_part, p, PairMode::strict_pairs).passed);
  }
  SECTION("part failures are labeled") {
    const auto bad = make_partial_functional({real_vec({1.0, 0.0})}, {9.0});
    try {
      extend_complex(fr, bad, p, p, targets, PairMode::all_pairs);
      FAIL("expected PrecheckFailed");
    } catch (const error& e) {
      CHECK(e.code() == errc::precheck_failed);
      CHECK(std::string(e.what()).find("imaginary") != std::string::npos);
    }
  }
}

TEST_CASE("Hilbert-space extension step") {
  const auto space = make_inner_product_space(3);
  auto state = make_hilbert_state(space, {space.basis_vector(0)}, 8);
  SubadditiveFunctional p;
  const auto ns = make_space(3, NormFamily::ell2);
  p.eval = [ns](const Vec& x) { return ns.norm(x); };
  p.sublinear = true;
  p.modulus = [](double h) { return h; };
  std::vector<double> grid;
  for (int k = -8; k <= 8; ++k) grid.push_back(0.5 * k);

  SECTION("the zero functional gives r(t) = -|t|") {
    const auto pts = make_line_samples(state);
    const auto f = make_partial_functional(pts, std::vector<double>(pts.size(), 0.0));
    const auto step = hilbert_step(state, f, p, space.basis_vector(1), grid, 1e-12, true);
    for (std::size_t k = 0; k < grid.size(); ++k)
      CHECK(step.r_table.r[k] == -std::abs(grid[k]));
    // The extension value on the new line is +|t| and r(0) = 0 exactly.
    const auto at = step.extended.find(0.5 * space.basis_vector(1));
    REQUIRE(at);
    CHECK(step.extended.values[*at] == 0.5);
    CHECK(step.worst_orthogonal_margin >= 0.0);
    CHECK(*step.worst_modulus_margin >= -1e-12);
  }
  SECTION("a dominated linear functional keeps r 1-Lipschitz") {
    Vec a(3);
    a[0] = Scalar{0.6, 0.0};
    a[1] = Scalar{0.3, 0.0};
    const auto pts = make_line_samples(state);
    std::vector<double> vals;
    for (const auto& x : pts) vals.push_back(dot(x, a).real());
    const auto f = make_partial_functional(pts, vals);
    const auto step = hilbert_step(state, f, p, space.basis_vector(1), grid, 1e-12, true);
    CHECK(step.worst_orthogonal_margin >= -1e-12);
    CHECK(*step.worst_modulus_margin >= -1e-12);
    // Brute-force recomputation of one r entry.
    double oracle = -1e300;
    for (std::size_t i = 0; i < f.size(); ++i)
      oracle = std::max(oracle, f.values[i] - p.eval(f.points[i] + 1.5 * space.basis_vector(1)));
    const auto it = std::find(grid.begin(), grid.end(), 1.5);
    REQUIRE(it != grid.end());
    CHECK(step.r_table.r[static_cast<std::size_t>(it - grid.begin())] == oracle);
    // Chain a second direction from the returned state.
    const auto step2 =
        hilbert_step(step.state, step.extended, p, space.basis_vector(2), grid, 1e-12, true);
    CHECK(step2.worst_orthogonal_margin >= -1e-12);
  }
  SECTION("error paths") {
    const auto pts = make_line_samples(state);
    const auto f = make_partial_functional(pts, std::vector<double>(pts.size(), 0.0));
    SubadditiveFunctional no_modulus;
    no_modulus.eval = p.eval;
    try {
      hilbert_step(state, f, p, space.basis_vector(0), grid);  // not orthogonal
      FAIL("expected ConfigInvalid");
    } catch (const error& e) {
      CHECK(e.code() == errc::config_invalid);
    }
    try {
      hilbert_step(state, f, no_modulus, space.basis_vector(1), grid, 1e-12, true);
      FAIL("expected ModulusMissing");
    } catch (const error& e) {
      CHECK(e.code() == errc::modulus_missing);
    }
    auto bad = f;
    bad.values[1] = 100.0;  // breaks F <= p
    try {
      hilbert_step(state, bad, p, space.basis_vector(1), grid);
      FAIL("expected PrecheckFailed");
    } catch (const error& e) {
      CHECK(e.code() == errc::precheck_failed);
    }
  }
}

TEST_CASE("norm-preserving linear-form extension") {
  SECTION("T(z) = 2 z1 on span{e1} in R^2 with k = 2") {
    const auto ambient = make_inner_product_space(2);
    LinearFormExtension ext;
    ext.subspace_basis = {ambient.basis_vector(0)};
    ext.coefficients = {Scalar{2.0, 0.0}};
    ext.wrapper = LinearFormExtension::Wrapper::power;
    ext.power_k = 2.0;
    const auto res = extend_via_linear(ext, ambient);
    CHECK(res.norm_T == 2.0);
    REQUIRE(res.norm_F_pk);
    CHECK(*res.norm_F_pk == 4.0);
    CHECK(res.extended.eval(real_vec({1.0, 0.0}))[0].real() == 4.0);
    // Analytic sup of 4 x1^2 / ||x||^2 is 4, attained at (1, 0).
    const auto dom = make_space(2, NormFamily::ell2);
    const auto samples = ball_samples(dom, 32, 2.0, 808);
    CHECK(estimate_norm(res.extended, NormKind::p_k(2.0), samples).value <= 4.0 + 1e-12);
  }
  SECTION("the zero form extends to the zero functional") {
    const auto ambient = make_inner_product_space(2);
    LinearFormExtension ext;
    ext.subspace_basis = {ambient.basis_vector(0)};
    ext.coefficients = {Scalar{0.0, 0.0}};
    ext.wrapper = LinearFormExtension::Wrapper::power;
    ext.power_k = 3.0;
    const auto res = extend_via_linear(ext, ambient);
    CHECK(res.norm_T == 0.0);
    CHECK(*res.norm_F_pk == 0.0);
    CHECK(res.extended.eval(real_vec({0.7, -0.3}))[0].real() == 0.0);
  }
  SECTION("coordinate extraction in R^3") {
    const auto ambient = make_inner_product_space(3);
    LinearFormExtension ext;
    ext.subspace_basis = {ambient.basis_vector(0)};
    ext.coefficients = {Scalar{1.0, 0.0}};
    ext.wrapper = LinearFormExtension::Wrapper::power;
    ext.power_k = 1.0;
    const auto res = extend_via_linear(ext, ambient);
    CHECK(*res.norm_F_pk == 1.0);
    CHECK(res.extended.eval(real_vec({-0.4, 1.0, 2.0}))[0].real() ==
          Catch::Approx(0.4).margin(1e-15));
  }
  SECTION("a decreasing wrapper is rejected") {
    const auto ambient = make_inner_product_space(2);
    LinearFormExtension ext;
    ext.subspace_basis = {ambient.basis_vector(0)};
    ext.coefficients = {Scalar{1.0, 0.0}};
    ext.wrapper = LinearFormExtension::Wrapper::user;
    ext.user_f = [](double u) { return -u; };
    try {
      extend_via_linear(ext, ambient);
      FAIL("expected NotMonotone");
    } catch (const error& e) {
      CHECK(e.code() == errc::not_monotone);
    }
  }
}

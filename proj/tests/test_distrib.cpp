#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "opnorm/distrib.hpp"
#include "opnorm/rng.hpp"

using namespace opnorm;

TEST_CASE("delta evaluation") {
  const auto b = bump_function(BumpFamily{{0.0}, 1.0, {1.0, 0.0}});
  CHECK(eval_delta({0.0}, b).real() == Catch::Approx(std::exp(-1.0)).margin(1e-16));
  CHECK(eval_delta({2.0}, b) == Scalar{0.0, 0.0});
  const auto b2 = Scalar{2.0, 0.0} * b;
  CHECK(eval_delta({0.0}, b2) == 2.0 * eval_delta({0.0}, b));
}

TEST_CASE("derivative delta evaluation") {
  const auto b = bump_function(BumpFamily{{0.0}, 1.0, {1.0, 0.0}});
  SECTION("even bumps have vanishing odd derivatives at the center") {
    CHECK(eval_deriv_delta({1}, b) == Scalar{0.0, 0.0});
  }
  SECTION("x b(x) picks up -b(0) at order one") {
    const auto xb = tf_poly_mul(Poly{0.0, 1.0}, b);
    CHECK(eval_deriv_delta({1}, xb).real() ==
          Catch::Approx(-std::exp(-1.0)).margin(1e-15));
  }
  SECTION("order zero agrees with the plain delta") {
    CHECK(eval_deriv_delta({0}, b) == eval_delta({0.0}, b));
  }
  SECTION("orders beyond the oracle are rejected") {
    auto clipped = b;
    clipped.max_order = 2;
    try {
      eval_deriv_delta({3}, clipped);
      FAIL("expected OrderExceedsOracle");
    } catch (const error& e) {
      CHECK(e.code() == errc::order_exceeds_oracle);
    }
  }
}

TEST_CASE("integral functionals by quadrature") {
  SECTION("unit kernel against t on a plateau window") {
    const auto kernel = make_integral_kernel([](double) { return Scalar{1.0, 0.0}; }, 0.0, 1.0);
    const auto f = tf_poly_mul(Poly{0.0, 1.0}, plateau_function(0.0, 1.0, 0.3));
    const auto v = eval_lambda_m(kernel, f);
    CHECK(v.value.real() == Catch::Approx(0.5).margin(1e-6));
    CHECK(v.error_bound <= 1e-6);
  }
  SECTION("zero inputs") {
    const auto kernel = make_integral_kernel([](double) { return Scalar{1.0, 0.0}; }, 0.0, 1.0);
    CHECK(eval_lambda_m(kernel, zero_test_function(1)).value == Scalar{0.0, 0.0});
    const auto zk = make_integral_kernel([](double) { return Scalar{0.0, 0.0}; }, 0.0, 1.0);
    CHECK(eval_lambda_m(zk, plateau_function(0.0, 1.0, 0.2)).value == Scalar{0.0, 0.0});
  }
  SECTION("disjoint supports integrate to zero") {
    const auto kernel = make_integral_kernel([](double) { return Scalar{1.0, 0.0}; }, 2.0, 3.0);
    const auto b = bump_function(BumpFamily{{0.0}, 1.0, {1.0, 0.0}});
    CHECK(eval_lambda_m(kernel, b).value == Scalar{0.0, 0.0});
  }
}

TEST_CASE("built-in functionals are linear on probe pairs") {
  Rng rng(909);
  const auto kernel =
      make_integral_kernel([](double t) { return Scalar{std::exp(-4.0 * t * t), 0.0}; }, -1.0,
                           1.0);
  std::vector<FunctionalHandle> funs = {delta_functional({0.2}), deriv_delta_functional({1}),
                                        integral_functional(kernel)};
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = bump_function(
        BumpFamily{{rng.uniform(-0.5, 0.5)}, 0.4 + 0.6 * rng.uniform(), rng.unit_complex()});
    const auto g = bump_function(
        BumpFamily{{rng.uniform(-0.5, 0.5)}, 0.4 + 0.6 * rng.uniform(), rng.unit_complex()});
    const Scalar alpha = 1.7 * rng.unit_complex();
    for (const auto& fun : funs) {
      const Scalar lhs = fun.eval(tf_lin_comb(alpha, f, {1.0, 0.0}, g));
      const Scalar rhs = alpha * fun.eval(f) + fun.eval(g);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("functional norms carry the Example 1 sandwich") {
  Rng rng(910);
  const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0));
  std::vector<TestFunction> family;
  for (int i = 0; i < 12; ++i)
    family.push_back(bump_function(BumpFamily{{rng.uniform(-1.0, 1.0)},
                                              0.2 + 0.8 * rng.uniform(),
                                              rng.unit_complex()}));

  SECTION("delta inside K_N is sandwiched by 1") {
    const auto res = functional_norm(delta_functional({0.5}), family, params);
    REQUIRE(res.upper);
    CHECK(*res.upper == 1.0);
    CHECK(res.lower.value <= 1.0);
    for (double r : res.ratios) CHECK(r <= 1.0 + 1e-12);
    CHECK(res.variant == "d_Cinf");
  }
  SECTION("an integral kernel with L1 mass 0.25") {
    const auto kernel =
        make_integral_kernel([](double) { return Scalar{0.25, 0.0}; }, 0.0, 1.0);
    CHECK(kernel.l1_norm == Catch::Approx(0.25).margin(1e-9));
    const auto res = functional_norm(integral_functional(kernel), family, params);
    REQUIRE(res.upper);
    for (double r : res.ratios) CHECK(r <= 0.25 + 1e-6);
  }
  SECTION("the zero functional has norm zero") {
    const auto res = functional_norm(zero_functional(), family, params);
    CHECK(res.lower.value == 0.0);
    CHECK_FALSE(res.upper);
  }
  SECTION("no chain downgrades to lower-bound-only") {
    const auto res = functional_norm(delta_functional({3.9}), family, params);  // outside K_N
    CHECK_FALSE(res.upper);
    CHECK(res.upper_reason.find("NoUpperBound") != std::string::npos);
  }
  SECTION("the whole-domain variant admits deltas anywhere in omega") {
    auto wide = params;
    wide.whole_domain = true;
    const auto res = functional_norm(delta_functional({3.5}), family, wide);
    REQUIRE(res.upper);
    CHECK(res.variant == "d_DOmega");
  }
}

TEST_CASE("position operator acts as multiplication by the center") {
  const auto dc = delta_functional({2.0});
  const auto fdc = position_operator(dc);
  const auto phi = bump_function(BumpFamily{{2.0}, 1.5, {1.0, 0.0}});
  CHECK(fdc.eval(phi) == 2.0 * phi.eval({2.0}));
  const auto zero = zero_functional();
  CHECK(position_operator(zero).eval(phi) == Scalar{0.0, 0.0});
}

TEST_CASE("momentum operator differentiates through the pairing") {
  const auto phi = bump_function(BumpFamily{{0.3}, 1.0, {1.0, 0.0}});
  SECTION("on a delta it evaluates -phi'(c)") {
    const auto f = momentum_operator(delta_functional({0.3}), 1);
    CHECK(f.eval(phi) == -phi.deriv({1}, {0.3}));
  }
  SECTION("the zero functional stays zero") {
    CHECK(momentum_operator(zero_functional(), 1).eval(phi) == Scalar{0.0, 0.0});
  }
  SECTION("smooth kernels satisfy integration by parts") {
    // -integral(m phi') equals integral(m' phi) for smooth compactly
    // supported m; both sides by independent quadratures.
    const auto m = bump_function(BumpFamily{{0.0}, 0.8, {1.0, 0.0}});
    auto md = m.deriv;
    const auto kernel = make_integral_kernel(
        [md](double t) { return md(MultiIndex{0}, {t}); }, -0.8, 0.8);
    const auto f = momentum_operator(integral_functional(kernel), 1);
    const Scalar lhs = f.eval(phi);
    const auto dkernel = make_integral_kernel(
        [md](double t) { return md(MultiIndex{1}, {t}); }, -0.8, 0.8);
    const Scalar rhs = eval_lambda_m(dkernel, phi).value;
    CHECK(std::abs(lhs - rhs) <= 1e-6);
  }
}

TEST_CASE("ramp witness arithmetic") {
  const RampWitness w{4, 0.11};
  SECTION("the exact L1 norm is the triangle area") {
    CHECK(w.l1_norm() == 0.125);
    // Quadrature cross-check of the closed form.
    const auto k = ramp_kernel(w);
    const auto quad = integrate_real(
        [&](double t) { return std::abs(k.m(t)); }, k.lo, k.hi, {1e-12, 100000});
    CHECK(quad.real() == Catch::Approx(0.125).margin(1e-10));
  }
  SECTION("a probe inside the ramp reduces to n times its mass") {
    const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
    const auto phi = bump_function(BumpFamily{{w.c + 0.125}, 0.06, {1.0, 0.0}});
    // Integration-by-parts oracle: -phi(c + 1/n) + n * integral(phi) with the
    // boundary value zero for an interior probe.
    const auto mass = integrate(
        [&](double t) { return phi.eval({t}); }, phi.support->lo[0], phi.support->hi[0],
        {1e-12, 200000});
    const double oracle = std::abs(-phi.eval({w.c + 0.25}).real() + 4.0 * mass.real());
    const auto res = momentum_witness_ratio(w, {phi}, params);
    const double den = frechet_metric_upper(phi, zero_test_function(1), params);
    CHECK(res.numerator_lb * den == Catch::Approx(oracle).epsilon(1e-7));
    CHECK(res.denominator_ub == 0.125);
    CHECK(res.certified_ratio == res.numerator_lb / 0.125);
  }
  SECTION("the certified ratio grows along the n ladder") {
    const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
    const RampWitness tight{8, 0.11};
    const auto [family, trace] = optimize_witness_probes(tight, params, 1);
    CHECK_FALSE(trace.empty());
    const auto r4 = momentum_witness_ratio(RampWitness{4, 0.11}, family, params);
    const auto r8 = momentum_witness_ratio(RampWitness{8, 0.11}, family, params);
    CHECK(r8.certified_ratio > r4.certified_ratio);
    CHECK_FALSE(r4.attained_2n);
  }
  SECTION("uncovered ramps are rejected") {
    const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
    try {
      momentum_witness_ratio(RampWitness{4, 3.9}, {bump_function(BumpFamily{})}, params);
      FAIL("expected SupportNotCovered");
    } catch (const error& e) {
      CHECK(e.code() == errc::support_not_covered);
    }
  }
}

TEST_CASE("star squares of functionals") {
  const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
  const auto dc = delta_functional({0.2});
  const auto sq = star_square(dc, params);
  const auto f = bump_function(BumpFamily{{0.0}, 1.0, {1.0, 0.0}});
  const auto g = bump_function(BumpFamily{{0.3}, 0.7, {1.0, 0.0}});

  SECTION("the square matches the display") {
    const Scalar v = dc.eval(f);
    const double d = frechet_metric(f, zero_test_function(1), params).value;
    CHECK(sq.eval(f) == v * v / d);
  }
  SECTION("squares are not additive") {
    const Scalar lhs = sq.eval(f + g);
    const Scalar rhs = sq.eval(f) + sq.eval(g);
    CHECK(std::abs(lhs - rhs) > 1e-6);
  }
  SECTION("the zero functional squares to zero") {
    CHECK(star_square(zero_functional(), params).eval(f) == Scalar{0.0, 0.0});
  }
}

TEST_CASE("cross-module consistency with the mapping metric") {
  Rng rng(911);
  const auto params = make_frechet_params(2.0, 1.0, 2, box1d(-4.0, 4.0), 8);
  std::vector<TestFunction> probes;
  for (int i = 0; i < 6; ++i)
    probes.push_back(bump_function(
        BumpFamily{{rng.uniform(-0.8, 0.8)}, 0.3 + 0.5 * rng.uniform(), {1.0, 0.0}}));
  const auto mm = testfunction_mapping_metric(params, probes);

  const auto dc = delta_functional({0.25});
  MappingHandle<TestFunction, Scalar> as_mapping;
  as_mapping.eval = dc.eval;
  as_mapping.value_at_zero = dc.eval(zero_test_function(1));
  const double via_metricmaps = mapping_norm(as_mapping, mm).value;

  // The same formula evaluated by hand over the same probes.
  double by_hand = std::abs(as_mapping.value_at_zero);
  for (const auto& f : probes) {
    const double d = frechet_metric(f, zero_test_function(1), params).value;
    if (d > 0.0) by_hand = std::max(by_hand, std::abs(dc.eval(f)) / d);
  }
  CHECK(via_metricmaps == by_hand);
}

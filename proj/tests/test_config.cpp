#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "opnorm/config.hpp"
#include "opnorm/report.hpp"

using namespace opnorm;

TEST_CASE("config parsing") {
  const auto cfg = Config::parse(R"(
# top comment
[run]
seed = 7
tol_exact = 1e-10   # inline comment

[space.domain]
dimension = 3
norm = weighted:1.0,2.0,0.5
)");
  CHECK(cfg.has("run"));
  CHECK(cfg.has("space.domain"));
  CHECK(cfg.sections.at("run").at("seed") == "7");
  CHECK(cfg.sections.at("space.domain").at("norm") == "weighted:1.0,2.0,0.5");

  CHECK_THROWS_AS(Config::parse("[run]\nseed = 1\nseed = 2\n"), error);
  CHECK_THROWS_AS(Config::parse("[run\nseed = 1\n"), error);
  CHECK_THROWS_AS(Config::parse("just some words\n"), error);
}

TEST_CASE("strict sections reject unknown keys") {
  const auto cfg = Config::parse("[run]\nseed = 3\nbogus = 1\n");
  SectionReader r(cfg, "run");
  CHECK(r.get_u64("seed", 0) == 3);
  try {
    r.finish();
    FAIL("expected ConfigInvalid for the unconsumed key");
  } catch (const error& e) {
    CHECK(e.code() == errc::config_invalid);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
}

TEST_CASE("space loading") {
  const auto cfg = Config::parse(R"(
[space]
dimension = 2
field = real
norm = ell1
[wspace]
dimension = 2
norm = weighted:0.5,1.5
)");
  const auto s = load_finite_space(cfg, "space");
  CHECK(s.dimension == 2);
  CHECK(s.norm_kind == NormFamily::ell1);
  const auto w = load_finite_space(cfg, "wspace");
  CHECK(w.norm(real_vec({2.0, 2.0})) == 4.0);

  CHECK_THROWS_AS(load_finite_space(Config::parse("[s]\ndimension = 0\n"), "s"), error);
  CHECK_THROWS_AS(load_finite_space(Config::parse("[s]\nfield = quaternion\n"), "s"), error);
}

TEST_CASE("metric parameter loading and validation") {
  const auto p = load_frechet_params(
      Config::parse("[metric]\na = 2.0\nb = 1.0\nN = 2\nomega_lo = -3\nomega_hi = 3\n"),
      "metric");
  CHECK(p.truncation == 30);
  CHECK_FALSE(p.whole_domain);

  // a = 0.5 violates a > 1 and must be rejected at load time.
  CHECK_THROWS_AS(
      load_frechet_params(Config::parse("[metric]\na = 0.5\n"), "metric"), error);
  CHECK_THROWS_AS(
      load_frechet_params(Config::parse("[metric]\nvariant = other\n"), "metric"), error);
}

TEST_CASE("run config defaults and overrides") {
  const auto rc = load_run_config(Config::parse("[run]\nseed = 99\ntol_quad = 1e-5\n"));
  CHECK(rc.seed == 99);
  CHECK(rc.tol.exact == 1e-12);
  CHECK(rc.tol.quad == 1e-5);
  CHECK_THROWS_AS(load_run_config(Config::parse("[run]\ntol_exact = -1\n")), error);
}

TEST_CASE("vectors from CSV rows") {
  std::istringstream in("x,y\n1.0,2.0\n-0.5,3.25\n\n4,5\n");
  const auto vs = read_vectors_csv(in);
  REQUIRE(vs.size() == 3);
  CHECK(vs[0] == real_vec({1.0, 2.0}));
  CHECK(vs[1] == real_vec({-0.5, 3.25}));
  CHECK(vs[2] == real_vec({4.0, 5.0}));
}

TEST_CASE("reports: verdicts, exit codes and canonical form") {
  Report rep;
  rep.set_command("norm");
  rep.set_seed(42);
  rep.add_check("a", true);
  CHECK(rep.all_passed());
  CHECK(rep.exit_code() == 0);
  rep.add_check("b", false, {{"margin", -0.5}});
  CHECK_FALSE(rep.all_passed());
  CHECK(rep.exit_code() == 1);

  rep.set_timing_ms(12.5);
  const auto canon = rep.canonical();
  CHECK(canon.find("timing_ms") == std::string::npos);
  Report rep2;
  rep2.set_command("norm");
  rep2.set_seed(42);
  rep2.add_check("a", true);
  rep2.add_check("b", false, {{"margin", -0.5}});
  rep2.set_timing_ms(99.0);  // timing differs, canonical form does not
  CHECK(rep2.canonical() == canon);
}

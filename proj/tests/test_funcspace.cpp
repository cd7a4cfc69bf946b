#include <doctest.h>

#include <cmath>

#include "sqopt/funcspace.hpp"

using namespace sqo;

TEST_CASE("catalog functions evaluate as documented") {
  FnModel f = catalog("jump_linear");
  CHECK(f.eval1(0.5) == 1.0);
  CHECK(f.eval1(0.0) == 0.0);
  CHECK(f.eval1(-0.5) == doctest::Approx(-0.5));
  FnModel g = catalog("recip_on_unit");
  CHECK(g.eval1(0.5) == -2.0);
  CHECK(g.eval1(1.5) == kInf);
  CHECK(g.eval1(-0.1) == kInf);
  FnModel g2 = catalog("recip_off_unit");
  CHECK(g2.eval1(0.5) == kInf);
  CHECK(g2.eval1(-2) == 0.5);
  CHECK(g2.eval1(2) == -0.5);
  CHECK(catalog("sqrt_abs").eval1(-4) == 2.0);
  CHECK(catalog("square", {{"scale", "2"}, {"shift", "1"}}, 2).eval(Vec::Ones(2)) == 3.0);
}

TEST_CASE("catalog rejects bad ids and parameters") {
  CHECK_THROWS_AS(catalog("nope"), Error);
  CHECK_THROWS_AS(catalog("constant", {{"k", "1"}}), Error);
  CHECK_THROWS_AS(catalog("linear", {{"c", "1,2"}}, 1), Error);
  for (const CatalogEntry& e : catalog_entries()) CHECK_FALSE(e.summary.empty());
}

TEST_CASE("parameter strings") {
  Params p = parse_params("A=\"1,0;0,2\" alpha=1/2");
  CHECK(p.at("A") == "1,0;0,2");
  CHECK(param_double(p, "alpha", 0) == 0.5);
  CHECK(param_double(p, "beta", 3) == 3);
  CHECK_THROWS(parse_params("a=1 a=2"));
  CHECK_THROWS(parse_params("a=\"1"));
  Mat m = parse_matrix("1,0;0,2");
  CHECK(m(1, 1) == 2);
  CHECK_THROWS(parse_matrix("1,0;2"));
}

TEST_CASE("directional derivatives") {
  FnModel a = catalog("abs");
  CHECK(dini_upper(a, vec1(0), vec1(1)) == doctest::Approx(1));
  CHECK(dini_lower(a, vec1(0), vec1(-1)) == doctest::Approx(1));
  FnModel h = catalog("hinge_left");
  CHECK(hadamard_upper(h, vec1(0), vec1(1)) == doctest::Approx(0).epsilon(1e-6));
  CHECK(hadamard_upper(h, vec1(0), vec1(-1)) == doctest::Approx(1).epsilon(1e-4));
  // -1/x from the right: quotients -1/t^2 diverge
  CHECK(dini_upper(catalog("recip_on_unit"), vec1(0), vec1(1)) == -kInf);
  CHECK(dini_lower(catalog("sqrt_abs"), vec1(0), vec1(1)) == kInf);
  CHECK_THROWS(dini_upper(catalog("recip_on_unit"), vec1(2), vec1(1)));
}

TEST_CASE("divergence rule") {
  std::vector<double> ts, slow, fast;
  for (int k = 0; k < 10; ++k) {
    double t = std::pow(0.5, 20 + k);
    ts.push_back(t);
    fast.push_back(-1 / (t * t));
    slow.push_back(-std::log(1 / t));
  }
  CHECK(divergence(fast, ts) == -kInf);
  CHECK(divergence(slow, ts) == 0.0);
}

TEST_CASE("sublevel sets and reconstruction") {
  FnModel f = catalog("jump_linear");
  RealSet1D s = reconstruct_line(sublevel_set(f, vec1(0), false), -3, 3);
  CHECK(s.approx_equal(RealSet1D::closed(-1, 0), 1e-6));
  RealSet1D strict = reconstruct_line(sublevel_set(f, vec1(0), true), -3, 3);
  CHECK(strict.approx_equal(RealSet1D::open(-1, 0), 1e-6));
  RealSet1D g = reconstruct_line(sublevel_set(catalog("recip_off_unit"), vec1(0), false), -5, 5);
  CHECK(g.approx_equal(RealSet1D::parse("{0} U (1,5]"), 1e-6));
}

TEST_CASE("inner semicontinuity probe") {
  FnModel sq = catalog("half_square");
  SetOracle V = SetOracle::from_line(RealSet1D::closed(-1, 1));
  std::vector<Vec> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(vec1(-1 + i / 20.0));
  CHECK_FALSE(sublevel_isc_probe(sq, vec1(0.5), V, grid).violation);
  FnModel br = catalog("isc_breaker");
  SetOracle W = SetOracle::from_line(RealSet1D::closed(-3, 3));
  std::vector<Vec> g2;
  for (int i = 0; i <= 60; ++i) g2.push_back(vec1(-3 + i / 10.0));
  CHECK(sublevel_isc_probe(br, vec1(0), W, g2).violation);
}

#include <doctest.h>

#include "sqopt/gencvx.hpp"
#include "sqopt/problem.hpp"

using namespace sqo;

TEST_CASE("sampled strong quasiconvexity verdicts") {
  SetOracle unit = parse_set("[-1,1]", 1);
  CHECK(sq_check(catalog("half_square"), unit, 1.0).verdict == SQVerdict::Verified);
  SQReport r = sq_check(catalog("half_square"), unit, 1.5);
  CHECK(r.verdict == SQVerdict::Refuted);
  CHECK(r.violation > 0);
  CHECK(sq_check(catalog("sqrt_abs"), unit, 0.1).verdict == SQVerdict::Verified);
  SetOracle wide = parse_set("[-100,100]", 1);
  CHECK(sq_check(catalog("frac_abs"), wide, 0.0).verdict == SQVerdict::Verified);
  CHECK(sq_check(catalog("frac_abs"), wide, 0.01).verdict == SQVerdict::Refuted);
  CHECK(sq_check(catalog("neg_square"), unit, 0.0).verdict == SQVerdict::Refuted);
}

TEST_CASE("modulus bracket for a half square") {
  ModulusEstimate m = modulus_estimate(catalog("half_square"), parse_set("[-1,1]", 1), 4.0, 1e-3);
  CHECK(m.quasiconvex);
  CHECK(m.gamma_lo <= 1.0 + 1e-9);
  CHECK(m.gamma_hi >= 1.0 - 1e-9);
  CHECK(m.gamma_hi - m.gamma_lo <= 2e-3);
}

TEST_CASE("sample_region is deterministic") {
  SetOracle box = parse_set("box(0,0;1,1)", 2);
  std::vector<Vec> a = sample_region(box, 50, 5), b = sample_region(box, 50, 5);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(box.contains(a[i]));
  }
}

TEST_CASE("quadratic fractional modulus") {
  QFPInstance q = qfp_from_params(parse_params("A=2 a=0 alpha=0 b=1 beta=2 m=1 M=3"));
  CHECK(q.lambda_min() == doctest::Approx(2));
  CHECK(q.modulus() == doctest::Approx(2.0 / 3));
  FnModel h = qfp_build(q);
  SetOracle K = qfp_region(q);
  CHECK(K.contains1(0.0));
  CHECK_FALSE(K.contains1(2.0));
  CHECK(sq_check(h, K, q.modulus()).verdict == SQVerdict::Verified);
}

TEST_CASE("strong minimum of a half square") {
  SetOracle unit = parse_set("[-1,1]", 1);
  CHECK(strong_minimum_check(catalog("half_square"), vec1(0), unit, 0.5).holds);
  CHECK_FALSE(strong_minimum_check(catalog("half_square"), vec1(0), unit, 0.6).holds);
}

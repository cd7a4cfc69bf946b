#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sqopt/strongsub.hpp"

using namespace sqo;

namespace {

SubdiffSpec spec(double beta, double gamma, const char* K) { return make_spec(beta, gamma, RealSet1D::parse(K)); }

void check_against_envelope(const char* id, double x, double beta, double gamma, double a, double b, double tol) {
  FnModel h = catalog(id);
  std::string K = "[" + fmt_double(a) + "," + fmt_double(b) + "]";
  IntervalApprox got = strong_interval_1d(h, x, spec(beta, gamma, K.c_str()));
  oracle::Envelope e = oracle::envelope([&](double y) { return h.eval1(y); }, x, beta, gamma, oracle::dense(a, b, x));
  std::string name = std::string(id) + " at " + fmt_double(x);
  CAPTURE(name);
  CAPTURE(got.inner.to_string());
  CAPTURE(e.lo);
  CAPTURE(e.hi);
  if (e.empty()) {
    CHECK(got.inner.is_empty());
    return;
  }
  REQUIRE_FALSE(got.inner.is_empty());
  if (std::isfinite(e.lo)) CHECK(got.inner.inf() == doctest::Approx(e.lo).epsilon(tol));
  else CHECK(got.inner.inf() == -kInf);
  if (std::isfinite(e.hi)) CHECK(got.inner.sup() == doctest::Approx(e.hi).epsilon(tol));
  else CHECK(got.inner.sup() == kInf);
}

}  // namespace

TEST_CASE("worst lambda closed form against a lambda grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3), pos(0.1, 3);
  for (int i = 0; i < 200; ++i) {
    double xi = u(rng), d = u(rng), beta = pos(rng), gamma = pos(rng) - 0.1;
    LambdaWorst w = worst_lambda_margin(xi, d, beta, gamma);
    double a = xi * d / beta + gamma * d * d / 2, b = (1 / beta + gamma) * d * d / 2;
    auto [arg, best] = oracle::grid_max(a, b, 20001);
    CHECK(w.sup_phi == doctest::Approx(best).epsilon(1e-6));
    CHECK(w.sup_phi >= best - 1e-12);
    (void)arg;
  }
}

TEST_CASE("strong subdifferential intervals match the per-point envelope") {
  check_against_envelope("half_square", 0.0, 1, 1, -2, 2, 1e-3);
  check_against_envelope("half_square", 0.5, 1, 0.5, -2, 2, 1e-3);
  check_against_envelope("abs", 0.0, 1, 1, -1, 1, 1e-3);
  check_against_envelope("jump_linear", 0.0, 1, 1, -1, 1, 1e-3);
  check_against_envelope("jump_linear", 0.0, 1, 1, -1, 0, 1e-3);
  check_against_envelope("hinge_left", 0.0, 1, 1, -1, 0, 1e-3);
  check_against_envelope("hinge_left", 0.0, 1, 1, 0, 1, 1e-3);
  check_against_envelope("sqrt_abs", 0.0, 1, 0.5, -1, 1, 1e-3);
  check_against_envelope("sqrt_abs", 0.0, 0.5, 0.5, -1, 1, 1e-3);
  check_against_envelope("frac_abs", 0.3, 2, 0, -1, 1, 1e-3);
}

TEST_CASE("jump-linear constraint: recomputed sets") {
  FnModel g = catalog("jump_linear");
  RealSet1D a = strong_interval_1d(g, 0, spec(1, 1, "[-1,1]")).inner;
  CHECK(a.approx_equal(RealSet1D::closed(0.5, 2), 1e-3));
  RealSet1D b = strong_interval_1d(g, 0, spec(1, 1, "[-1,0]")).inner;
  CHECK(b.approx_equal(RealSet1D::interval(0.5, kInf, true, false), 1e-3));
}

TEST_CASE("membership verdicts agree with brute force") {
  FnModel g = catalog("jump_linear");
  auto f = [&](double y) { return g.eval1(y); };
  std::vector<double> ys = oracle::dense(-1, 1, 0, 2001);
  for (double xi : {0.3, 0.49, 0.51, 1.0, 1.99, 2.01}) {
    CAPTURE(xi);
    bool lib = strong_member(g, vec1(0), spec(1, 1, "[-1,1]"), vec1(xi)).member;
    CHECK(lib == oracle::brute_member(f, 0, 1, 1, xi, ys));
  }
}

TEST_CASE("empty and whole-line cases") {
  CHECK(strong_set_1d(catalog("recip_off_unit"), 0, spec(1, 1, "R")).is_empty());
  RealSet1D g1 = strong_set_1d(catalog("recip_on_unit"), 0, spec(1, 1, "R"));
  CHECK(g1.approx_equal(RealSet1D::interval(-kInf, -0.5, false, true), 1e-3));
  CHECK(strong_set_1d(catalog("half_sq_left"), 0, spec(1, 1, "R")).is_empty());
  CHECK(strong_set_1d(catalog("zero"), 0, spec(1, 0, "R")) == RealSet1D::point(0));
}

TEST_CASE("anti-monotonicity in K") {
  FnModel h = catalog("hinge_left");
  RealSet1D big = strong_set_1d(h, 0, spec(1, 1, "[-1,1]"));
  for (const char* K : {"[-1,0]", "[0,1]", "[-1/2,1/2]"}) {
    RealSet1D small = strong_set_1d(h, 0, spec(1, 1, K));
    CAPTURE(K);
    for (const Interval& p : big.parts()) {
      if (std::isfinite(p.lo)) CHECK(small.contains_approx(p.lo, 1e-3));
      if (std::isfinite(p.hi)) CHECK(small.contains_approx(p.hi, 1e-3));
    }
  }
}

TEST_CASE("SS subdifferential reduction") {
  FnModel h = catalog("half_square");
  // S_h(1/2) = [-1/2, 1/2]; <xi, y - 1/2> <= -(1/2)|y - 1/2|^2 needs xi >= 1/2
  CHECK(ss_member(h, vec1(0.5), 1, 1, vec1(0.6)).member);
  CHECK_FALSE(ss_member(h, vec1(0.5), 1, 1, vec1(0.4)).member);
}

TEST_CASE("classical subdifferentials on the line") {
  FnModel a = catalog("abs");
  CHECK(classical_subdiff_1d(a, 0, SubdiffKind::FenchelMoreau).inner.approx_equal(RealSet1D::closed(-1, 1), 1e-6));
  CHECK(classical_subdiff_1d(a, 0, SubdiffKind::Regular).inner.approx_equal(RealSet1D::closed(-1, 1), 1e-6));
  CHECK(classical_subdiff_1d(a, 0, SubdiffKind::Horizon).inner == RealSet1D::point(0));
  FnModel g = catalog("recip_on_unit");
  for (SubdiffKind k : {SubdiffKind::Regular, SubdiffKind::Limiting, SubdiffKind::Horizon, SubdiffKind::Quasiconvex,
                        SubdiffKind::FenchelMoreau})
    CHECK(classical_subdiff_1d(g, 0, k).inner.is_empty());
  CHECK(classical_subdiff_1d(g, 0, SubdiffKind::GreenbergPierskalla).inner == RealSet1D::interval(-kInf, 0, false, false));
  FnModel n = catalog("neg_square");
  CHECK(classical_subdiff_1d(n, 0, SubdiffKind::Limiting).inner == RealSet1D::point(0));
  CHECK(classical_subdiff_1d(catalog("sqrt_abs"), 0, SubdiffKind::FenchelMoreau).inner == RealSet1D::point(0));
  CHECK(classical_subdiff_1d(catalog("cbrt"), 0, SubdiffKind::Horizon).inner == RealSet1D::interval(0, kInf, true, false));
  CHECK(subdiff_kind_from_string("greenberg_pierskalla") == SubdiffKind::GreenbergPierskalla);
  CHECK_THROWS(subdiff_kind_from_string("clarke"));
}

TEST_CASE("normal operators") {
  CHECK(normal_operator_1d(catalog("jump_linear"), 0) == RealSet1D::interval(0, kInf, true, false));
  CHECK(normal_operator_1d(catalog("recip_on_unit"), 0) == RealSet1D::interval(-kInf, 0, false, true));
  CHECK(normal_operator_1d(catalog("recip_off_unit"), 0) == RealSet1D::interval(-kInf, 0, false, true));
  CHECK(normal_operator_1d(catalog("half_square"), 0).is_all());
}

TEST_CASE("F_H-regularity depends on K") {
  FnModel h = catalog("hinge_left");
  CHECK(f_regularity_check(h, 0, spec(1, 1, "[-1,0]")).regular);
  RegularityReport r = f_regularity_check(h, 0, spec(1, 1, "[0,1]"));
  CHECK_FALSE(r.regular);
  CHECK(r.counter_direction > 0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_spec(0, 1, RealSet1D::all()).validate(1), Error);
  CHECK_THROWS_AS(make_spec(1, -1, RealSet1D::all()).validate(1), Error);
  CHECK_THROWS_AS(strong_member(catalog("abs"), vec1(0), spec(1, 1, "R"), Vec::Zero(2)), Error);
}

TEST_CASE("strong subdifferential on [h <= 0] at a local maximiser") {
  FnModel c = catalog("constant", parse_params("c=-1"));
  CHECK(strong_interval_1d(c, 0.4, spec(1, 1, "R")).inner.is_empty());
  CHECK(strong_set_1d(c, 0.4, spec(2, 0, "R")) == RealSet1D::point(0));
  FnModel peak = catalog("square", parse_params("scale=-1 shift=1"));
  RealSet1D level = RealSet1D::all();  // -x^2 - 1 <= 0 everywhere
  CHECK(strong_interval_1d(peak, 0, make_spec(1, 1, level)).inner.is_empty());
  CHECK(strong_set_1d(peak, 0, make_spec(1, 0, level)) == RealSet1D::point(0));
}

TEST_CASE("SS reduction with a sublevel set given only by membership") {
  FnModel h = catalog("frac_abs");
  SubdiffSpec sp;
  sp.beta = 1;
  sp.gamma = 1;
  sp.K = sublevel_set(h, vec1(0.3), false);  // (-inf, 0.3], no exact description
  for (double xi : {-1.0, 0.0, 0.5, 2.5}) {
    CAPTURE(xi);
    CHECK(strong_member(h, vec1(0.3), sp, vec1(xi)).member == ss_member(h, vec1(0.3), 1, 1, vec1(xi)).member);
  }
  // far points of the unbounded sublevel set refute any xi > 0
  CHECK_FALSE(ss_member(h, vec1(0.3), 1, 1, vec1(2.5)).member);
}

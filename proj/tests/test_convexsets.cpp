#include <doctest.h>

#include <random>

#include "sqopt/convexsets.hpp"

using namespace sqo;

TEST_CASE("tangent and normal cones on the line") {
  RealSet1D S = RealSet1D::closed(-1, 0);
  CHECK(tangent_cone_1d(S, 0) == RealSet1D::interval(-kInf, 0, false, true));
  CHECK(normal_cone_1d(S, 0) == RealSet1D::interval(0, kInf, true, false));
  CHECK(normal_cone_1d(S, -0.5) == RealSet1D::point(0));
  CHECK(normal_cone_1d(RealSet1D::point(0), 0).is_all());
  CHECK(tangent_cone_1d(RealSet1D::point(0), 0) == RealSet1D::point(0));
  CHECK_THROWS_AS(normal_cone_1d(S, 1), Error);
  // open sets are closed first
  CHECK(normal_cone_1d(RealSet1D::open(0, 1), 0) == RealSet1D::interval(-kInf, 0, false, true));
}

TEST_CASE("tangent membership for polyhedra") {
  Vec lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  SetOracle box = SetOracle::box(lo, hi);
  Vec corner = Vec::Zero(2), d(2);
  d << 1, 0;
  CHECK(tangent_contains(box, corner, d));
  d << -1, 0;
  CHECK_FALSE(tangent_contains(box, corner, d));
  std::vector<Vec> gens = normal_generators(box, corner);
  CHECK(gens.size() == 2);
  Vec w(2);
  w << -1, -2;
  CHECK(cone_distance(w, gens) == doctest::Approx(0).epsilon(1e-12));
  w << 1, -2;
  CHECK(cone_distance(w, gens) == doctest::Approx(1));
}

TEST_CASE("polar membership against samples") {
  std::vector<Vec> samples;
  for (int i = 0; i <= 10; ++i) samples.push_back(vec1(-i / 10.0));
  CHECK(polar_member(vec1(1), samples, vec1(0)).member);
  PolarVerdict v = polar_member(vec1(-1), samples, vec1(0));
  CHECK_FALSE(v.member);
  CHECK(v.worst == doctest::Approx(1));
}

TEST_CASE("minimum norm point agrees with a brute-force simplex scan") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 3; ++i) {
      Vec p(2);
      p << u(rng), u(rng);
      pts.push_back(p);
    }
    Vec m = min_norm_in_hull(pts);
    double best = kInf;
    const int n = 400;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        double a = double(i) / n, b = double(j) / n;
        best = std::min(best, (a * pts[0] + b * pts[1] + (1 - a - b) * pts[2]).norm());
      }
    CHECK(m.norm() <= best + 1e-9);
    CHECK(m.norm() >= best - 2e-2);
  }
}

TEST_CASE("horizon and support helpers") {
  CHECK(horizon_set_1d(RealSet1D::interval(1, kInf, true, false)) == RealSet1D::interval(0, kInf, true, false));
  CHECK(support_value(RealSet1D::closed(-1, 2), -2) == 2);
  std::vector<Vec> s{vec1(1), vec1(-3)};
  CHECK(support_value(s, vec1(-1)) == 3);
}

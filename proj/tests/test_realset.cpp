#include <doctest.h>

#include "sqopt/realset.hpp"
#include "sqopt/common.hpp"

using sqo::RealSet1D;
using sqo::kInf;

TEST_CASE("parse and format round trip") {
  for (const char* s : {"{}", "{0}", "[0.5,2]", "(-inf,0]", "[1,inf)", "(-inf,inf)", "[-1,0) U {2} U (3,4]"}) {
    CAPTURE(s);
    CHECK(RealSet1D::parse(RealSet1D::parse(s).to_string()) == RealSet1D::parse(s));
  }
  CHECK(RealSet1D::parse("R").is_all());
  CHECK(RealSet1D::parse("[1/4,2]") == RealSet1D::closed(0.25, 2));
  CHECK_THROWS(RealSet1D::parse("[2,1]"));
  CHECK_THROWS(RealSet1D::parse("[0,1"));
}

TEST_CASE("canonical form merges touching pieces") {
  RealSet1D a = RealSet1D::parse("[0,1) U [1,2]");
  CHECK(a == RealSet1D::closed(0, 2));
  CHECK(RealSet1D::parse("(0,1) U (1,2)").parts().size() == 2);
}

TEST_CASE("set algebra") {
  RealSet1D a = RealSet1D::closed(0, 2), b = RealSet1D::open(1, 3);
  CHECK(a.intersect(b) == RealSet1D::interval(1, 2, false, true));
  CHECK(a.unite(b) == RealSet1D::interval(0, 3, true, false));
  CHECK(a.minkowski(b) == RealSet1D::open(1, 5));
  CHECK(a.minkowski(RealSet1D::empty()).is_empty());
  CHECK(a.scale(-1) == RealSet1D::closed(-2, 0));
  CHECK(RealSet1D::open(0, 1).closure() == RealSet1D::closed(0, 1));
  CHECK(RealSet1D::parse("{0} U [2,3]").hull() == RealSet1D::closed(0, 3));
}

TEST_CASE("cones") {
  CHECK(RealSet1D::closed(0.25, 2).positive_hull() == RealSet1D::interval(0, kInf, false, false));
  CHECK(RealSet1D::closed(0.25, 2).cone() == RealSet1D::interval(0, kInf, true, false));
  CHECK(RealSet1D::empty().positive_hull().is_empty());
  CHECK(RealSet1D::empty().cone() == RealSet1D::point(0));
  CHECK(RealSet1D::empty().polar().is_all());
  CHECK(RealSet1D::closed(0, 1).polar() == RealSet1D::interval(-kInf, 0, false, true));
  CHECK(RealSet1D::point(0).polar().is_all());
  CHECK(RealSet1D::closed(0.25, 2).horizon() == RealSet1D::point(0));
  CHECK(RealSet1D::interval(-kInf, -0.5, false, true).horizon() == RealSet1D::interval(-kInf, 0, false, true));
  CHECK(RealSet1D::empty().horizon().is_empty());
}

TEST_CASE("support, distance, nearest") {
  RealSet1D a = RealSet1D::closed(-1, 2);
  CHECK(a.support(1) == 2);
  CHECK(a.support(-1) == 1);
  CHECK(RealSet1D::empty().support(1) == -kInf);
  CHECK(RealSet1D::interval(-kInf, -0.5, false, true).support(1) == -0.5);
  CHECK(RealSet1D::interval(-kInf, -0.5, false, true).support(-1) == kInf);
  CHECK(a.distance(3) == 1);
  CHECK(RealSet1D::empty().distance(0) == kInf);
  CHECK(RealSet1D::open(0, 1).nearest(-5) == 0);
}

TEST_CASE("approximate equality") {
  RealSet1D a = RealSet1D::closed(0.5, 2);
  CHECK(a.approx_equal(RealSet1D::closed(0.49994, 2.00004), 1e-3));
  CHECK_FALSE(a.approx_equal(RealSet1D::closed(0.25, 2), 1e-3));
  CHECK_FALSE(a.approx_equal(RealSet1D::interval(0.5, kInf, true, false), 1e-3));
  CHECK(RealSet1D::empty().approx_equal(RealSet1D::empty(), 1e-3));
}

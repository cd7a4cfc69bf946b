#pragma once

#include <vector>

#include "sqopt/common.hpp"
#include "sqopt/realset.hpp"
#include "sqopt/setoracle.hpp"

namespace sqo {

struct PolarVerdict {
  bool member = true;
  double worst = -kInf;  // max over samples of <v, s>
  Vec witness;           // sample attaining `worst`
};

/// v in (S - x)^o tested against sampled points of S.
PolarVerdict polar_member(const Vec& v, const std::vector<Vec>& samples, const Vec& x, double tol = tol::kMember);

/// Tangent (Bouligand) cone of a closed set at x. Exact in dimension one and
/// for polyhedra; feasible-direction probe otherwise.
bool tangent_contains(const SetOracle& K, const Vec& x, const Vec& d, double tol = tol::kMember);
RealSet1D tangent_cone_1d(const RealSet1D& S, double x);

/// Limiting normal cone of a closed subset of the line.
RealSet1D normal_cone_1d(const RealSet1D& S, double x);

/// Generators of N(Omega, x) for a polyhedron: normals of active halfspaces.
std::vector<Vec> normal_generators(const SetOracle& omega, const Vec& x, double tol = tol::kActive);

/// Distance from w to the convex cone generated by `gens` (to {0} if empty).
double cone_distance(const Vec& w, const std::vector<Vec>& gens);

RealSet1D horizon_set_1d(const RealSet1D& A);

double support_value(const RealSet1D& A, double d);
double support_value(const std::vector<Vec>& samples, const Vec& d);

/// Minimum-norm point of the convex hull of finitely many points (Wolfe).
Vec min_norm_in_hull(const std::vector<Vec>& points, double tol = 1e-12);

}  // namespace sqo

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqopt/strongsub.hpp"

namespace sqo {

/// Omega = {x : g_j(x) <= 0 for all j}, declared convex, with the strong
/// subdifferential parameters attached to each constraint.
struct ConstraintSystem {
  std::vector<FnModel> gs;
  std::vector<SubdiffSpec> specs;
  SetOracle omega;

  int dim() const;
  void validate() const;
};

std::vector<int> active_set(const ConstraintSystem& cs, const Vec& x, double eps = tol::kActive);

/// Per-constraint sets at an active index, reconstructed on the line.
struct ActiveData {
  int j = 0;
  RealSet1D strong;    // strong subdifferential, snapped at zero
  RealSet1D normal;    // N_{g_j}(x) = (S_{g_j}(x) - x)^o
  RealSet1D horizon;   // sampled horizon subdifferential
};

std::vector<ActiveData> active_data_1d(const ConstraintSystem& cs, double x);

/// Union over sign patterns of mu of sum_{mu_j>0} mu_j A_j + sum_{mu_j=0} B_j
/// on the line, where `use_horizon` selects B_j between normal operators and
/// horizon subdifferentials.
struct ConeDescription {
  RealSet1D set;        // closure applied when `closed`
  RealSet1D raw_union;
  bool closed = false;
  std::vector<std::string> patterns;  // one line per sign pattern
  std::vector<RealSet1D> pattern_sets;
};

ConeDescription assemble_cone(const std::vector<ActiveData>& data, bool use_horizon, bool closure);

/// Lower estimate of N(Omega, x) built from normal operators, closed.
ConeDescription normal_cone_lower(const ConstraintSystem& cs, const Vec& x);

/// N(Omega, x) on the line; cone distance form for polyhedra.
RealSet1D omega_normal_cone_1d(const ConstraintSystem& cs, double x);

enum class SlaterVariant { S, SN };

struct SlaterReport {
  bool holds = false;
  bool vacuous = false;  // some active strong subdifferential is empty
  Vec direction;
  std::vector<double> supports;
  int tried = 0;
};

SlaterReport slater_check(const ConstraintSystem& cs, const Vec& x, SlaterVariant variant,
                          std::vector<Vec> candidates = {});

struct Hypothesis {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct EqualityReport {
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_hold = false;
  RealSet1D rhs;
  RealSet1D normal_cone;
  bool equal = false;
  std::optional<double> witness;  // element of N(Omega,x) outside the right side
};

EqualityReport normal_cone_equality_check(const ConstraintSystem& cs, const Vec& x);

enum class MaxRuleVerdict { Equality, InclusionOnly };

struct MaxRuleReport {
  MaxRuleVerdict verdict = MaxRuleVerdict::Equality;
  bool forward_holds = true;
  RealSet1D union_side;  // closed convex hull of the union
  RealSet1D sup_side;    // strong subdifferential of the pointwise sup
  std::vector<int> active;
  double gamma_m = 0.0;
  std::optional<double> witness;
  std::vector<Hypothesis> hypotheses;
};

/// Max rule for g = max_j g_j at x with specs (K_j, gamma_j) and a common beta
/// and K on the sup side.
MaxRuleReport max_rule_check(const std::vector<FnModel>& gs, double x, const std::vector<SubdiffSpec>& specs,
                             double beta, const RealSet1D& K);

FnModel pointwise_max(const std::vector<FnModel>& gs);

}  // namespace sqo

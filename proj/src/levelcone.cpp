#include "sqopt/levelcone.hpp"

#include <algorithm>
#include <cmath>

#include "sqopt/convexsets.hpp"

namespace sqo {

int ConstraintSystem::dim() const { return omega.dim(); }

void ConstraintSystem::validate() const {
  if (gs.size() != specs.size()) throw Error(ErrorCode::InvalidParams, "one spec per constraint is required");
  for (size_t j = 0; j < gs.size(); ++j) {
    if (gs[j].dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "constraint " + std::to_string(j + 1));
    specs[j].validate(dim());
  }
}

std::vector<int> active_set(const ConstraintSystem& cs, const Vec& x, double eps) {
  cs.validate();
  if (x.size() != cs.dim()) throw Error(ErrorCode::DimensionMismatch, "point");
  if (!cs.omega.contains(x)) throw Error(ErrorCode::InfeasiblePoint, "point is outside Omega");
  std::vector<int> act;
  for (size_t j = 0; j < cs.gs.size(); ++j) {
    double v = cs.gs[j].eval(x);
    if (v > eps) throw Error(ErrorCode::InfeasiblePoint, "g_" + std::to_string(j + 1) + "(x) = " + fmt_double(v));
    if (std::abs(v) <= eps) act.push_back(static_cast<int>(j));
  }
  return act;
}

std::vector<ActiveData> active_data_1d(const ConstraintSystem& cs, double x) {
  if (cs.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "exact cone assembly needs dimension one");
  std::vector<ActiveData> out;
  for (int j : active_set(cs, vec1(x))) {
    ActiveData a;
    a.j = j;
    a.strong = strong_set_1d(cs.gs[j], x, cs.specs[j]);
    a.normal = normal_operator_1d(cs.gs[j], x);
    a.horizon = classical_subdiff_1d(cs.gs[j], x, SubdiffKind::Horizon).inner;
    out.push_back(a);
  }
  return out;
}

ConeDescription assemble_cone(const std::vector<ActiveData>& data, bool use_horizon, bool closure) {
  ConeDescription c;
  c.closed = closure;
  const size_t m = data.size();
  if (m > 12) throw Error(ErrorCode::InvalidParams, "too many active constraints for pattern enumeration");
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    RealSet1D sum = RealSet1D::point(0.0);
    std::string desc;
    for (size_t k = 0; k < m; ++k) {
      bool pos = mask & (1u << k);
      const ActiveData& a = data[k];
      RealSet1D term = pos ? a.strong.positive_hull() : (use_horizon ? a.horizon : a.normal);
      sum = sum.minkowski(term);
      desc += (desc.empty() ? "" : ", ") + std::string("mu_") + std::to_string(a.j + 1) + (pos ? ">0" : "=0");
    }
    c.patterns.push_back((desc.empty() ? "no active constraints" : desc) + " -> " + sum.to_string());
    c.pattern_sets.push_back(sum);
    c.raw_union = c.raw_union.unite(sum);
  }
  c.set = closure ? c.raw_union.closure() : c.raw_union;
  return c;
}

ConeDescription normal_cone_lower(const ConstraintSystem& cs, const Vec& x) {
  if (x.size() != 1) throw Error(ErrorCode::DimensionMismatch, "normal_cone_lower is exact in dimension one");
  return assemble_cone(active_data_1d(cs, x[0]), false, true);
}

RealSet1D omega_normal_cone_1d(const ConstraintSystem& cs, double x) {
  if (!cs.omega.line()) throw Error(ErrorCode::InvalidParams, "Omega needs an interval description");
  return normal_cone_1d(*cs.omega.line(), x);
}

namespace {

bool subset(const RealSet1D& a, const RealSet1D& b) { return a.intersect(b) == a; }

RealSet1D common_tangent(const ConstraintSystem& cs, const std::vector<int>& act, double x) {
  RealSet1D t = RealSet1D::all();
  for (int j : act) {
    const SetOracle& K = cs.specs[j].K;
    if (!K.line()) throw Error(ErrorCode::InvalidParams, "K_j needs an interval description");
    t = t.intersect(tangent_cone_1d(*K.line(), x));
  }
  return t;
}

bool feasible_direction(const RealSet1D& K, double x, double d) {
  for (int k = 0; k < 60; ++k)
    if (K.contains(x + std::ldexp(d, -k))) return true;
  return false;
}

}  // namespace

SlaterReport slater_check(const ConstraintSystem& cs, const Vec& x, SlaterVariant variant, std::vector<Vec> candidates) {
  if (cs.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "slater_check evaluates supports in dimension one");
  SlaterReport rep;
  std::vector<ActiveData> data = active_data_1d(cs, x[0]);
  for (const ActiveData& a : data)
    if (a.strong.is_empty()) rep.vacuous = true;
  if (candidates.empty()) {
    candidates = {vec1(-1.0), vec1(1.0)};
    if (cs.omega.line() && !cs.omega.line()->is_empty()) {
      const RealSet1D& om = *cs.omega.line();
      for (double y : {om.inf(), om.sup(), x[0] - 0.5, x[0] + 0.5}) {
        if (std::isfinite(y) && y != x[0] && om.contains(y)) candidates.push_back(vec1(y - x[0]));
      }
    }
  }
  std::vector<int> act;
  for (const ActiveData& a : data) act.push_back(a.j);
  RealSet1D T = common_tangent(cs, act, x[0]);
  for (const Vec& d : candidates) {
    if (d.size() != 1 || d[0] == 0.0) continue;
    bool admissible = true;
    if (variant == SlaterVariant::SN) {
      admissible = T.contains(d[0]);
    } else {
      for (int j : act) admissible = admissible && feasible_direction(*cs.specs[j].K.line(), x[0], d[0]);
    }
    if (!admissible) continue;
    ++rep.tried;
    std::vector<double> sup;
    bool ok = !rep.vacuous;
    for (const ActiveData& a : data) {
      double s = a.strong.support(d[0]);
      sup.push_back(s);
      if (!(s < -tol::kStrictMargin)) ok = false;
    }
    if (ok) {
      rep.holds = true;
      rep.direction = d;
      rep.supports = sup;
      return rep;
    }
  }
  return rep;
}

EqualityReport normal_cone_equality_check(const ConstraintSystem& cs, const Vec& x) {
  if (cs.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "equality check is exact in dimension one only");
  EqualityReport rep;
  const double xb = x[0];
  std::vector<ActiveData> data = active_data_1d(cs, xb);
  std::vector<int> act;
  for (const ActiveData& a : data) act.push_back(a.j);

  SlaterReport sl = slater_check(cs, x, SlaterVariant::SN);
  rep.hypotheses.push_back({"(a) Slater-type direction in the common tangent cone", sl.holds,
                            sl.holds ? "d = " + fmt_double(sl.direction[0])
                                     : (sl.vacuous ? "an active strong subdifferential is empty" : "no direction found")});

  RealSet1D P = RealSet1D::all();
  bool empty_cone = false;
  for (const ActiveData& a : data) {
    P = P.intersect(a.horizon.cone().polar()).intersect(a.strong.cone().polar());
    empty_cone = empty_cone || a.horizon.is_empty() || a.strong.is_empty();
  }
  RealSet1D T = common_tangent(cs, act, xb);
  bool b = subset(P, T);
  rep.hypotheses.push_back({"(b) polar cones inside the common tangent cone", b,
                            "polars " + P.to_string() + ", tangent " + T.to_string() +
                                (empty_cone ? " (cone of an empty set taken as {0})" : "")});

  bool c = true;
  std::string cd;
  for (const ActiveData& a : data) {
    const FnModel& g = cs.gs[a.j];
    bool inc = subset(a.horizon, a.normal);
    bool usc = g.ann().usc;
    RegularityReport fr = f_regularity_check(g, xb, cs.specs[a.j], {-1.0, 1.0}, DerivativeVariant::Hadamard);
    c = c && inc && usc && fr.regular;
    cd += "g_" + std::to_string(a.j + 1) + ": horizon in normal operator " + (inc ? "yes" : "no") + ", usc " +
          (usc ? "yes" : "no") + ", F_H-regular " + (fr.regular ? (fr.vacuous ? "vacuously" : "yes") : "no") + "; ";
  }
  rep.hypotheses.push_back({"(c) horizon inclusion, upper semicontinuity, F_H-regularity", c, cd});

  bool d = true;
  std::string dd;
  for (const ActiveData& a : data) {
    bool compact = a.strong.is_bounded();
    bool closed_cone = !a.strong.contains(0.0) && a.strong.cone().is_closed();
    d = d && (compact || closed_cone);
    dd += "g_" + std::to_string(a.j + 1) + (compact ? ": compact; " : (closed_cone ? ": closed cone, 0 excluded; " : ": neither; "));
  }
  rep.hypotheses.push_back({"(d) compactness or closed cone without 0", d, dd});

  rep.hypotheses_hold = true;
  for (const Hypothesis& h : rep.hypotheses) rep.hypotheses_hold = rep.hypotheses_hold && h.holds;

  ConeDescription rhs = assemble_cone(data, true, true);
  rep.rhs = rhs.set.hull().closure();
  rep.normal_cone = omega_normal_cone_1d(cs, xb);
  rep.equal = rep.rhs == rep.normal_cone;
  if (!rep.equal) {
    for (double v : {1.0, -1.0, 0.0})
      if (rep.normal_cone.contains(v) && !rep.rhs.contains(v)) {
        rep.witness = v;
        break;
      }
  }
  return rep;
}

FnModel pointwise_max(const std::vector<FnModel>& gs) {
  if (gs.empty()) throw Error(ErrorCode::InvalidParams, "empty family");
  SetOracle dom = gs.front().domain();
  FnAnnotations ann;
  ann.usc = ann.lsc = true;
  std::string name = "max(";
  for (size_t j = 0; j < gs.size(); ++j) {
    if (gs[j].dim() != gs.front().dim()) throw Error(ErrorCode::DimensionMismatch, "family dimension");
    if (j) dom = dom.intersect(gs[j].domain());
    ann.usc = ann.usc && gs[j].ann().usc;
    ann.lsc = ann.lsc && gs[j].ann().lsc;
    for (double b : gs[j].ann().breakpoints) ann.breakpoints.push_back(b);
    name += (j ? "," : "") + gs[j].name();
  }
  auto fam = gs;
  return FnModel(name + ")", gs.front().dim(),
                 [fam](const Vec& x) {
                   double v = -kInf;
                   for (const FnModel& g : fam) v = std::max(v, g.eval(x));
                   return v;
                 },
                 dom, ann);
}

MaxRuleReport max_rule_check(const std::vector<FnModel>& gs, double x, const std::vector<SubdiffSpec>& specs,
                             double beta, const RealSet1D& K) {
  if (gs.size() != specs.size()) throw Error(ErrorCode::InvalidParams, "one spec per function is required");
  MaxRuleReport rep;
  FnModel g = pointwise_max(gs);
  double gx = g.eval1(x);
  if (gx == kInf) throw Error(ErrorCode::PointOutsideDomain, "max is +inf at the point");
  rep.gamma_m = kInf;
  for (size_t j = 0; j < gs.size(); ++j) {
    if (std::abs(gs[j].eval1(x) - gx) <= tol::kActive * std::max(1.0, std::abs(gx))) {
      rep.active.push_back(static_cast<int>(j));
      rep.gamma_m = std::min(rep.gamma_m, specs[j].gamma);
    }
  }
  std::vector<RealSet1D> parts;
  RealSet1D uni;
  for (int j : rep.active) {
    parts.push_back(strong_set_1d(gs[j], x, specs[j]));
    uni = uni.unite(parts.back());
  }
  rep.union_side = uni.hull().closure();
  SubdiffSpec sup_spec = make_spec(beta, rep.gamma_m, K);
  rep.sup_side = strong_set_1d(g, x, sup_spec).closure();

  const double slack = 1e-4;
  auto within = [slack](const RealSet1D& a, const RealSet1D& b) {
    if (a.is_empty()) return true;
    if (b.is_empty()) return false;
    return a.inf() >= b.inf() - slack && a.sup() <= b.sup() + slack;
  };
  rep.forward_holds = within(rep.union_side, rep.sup_side);
  bool reverse = within(rep.sup_side, rep.union_side);
  rep.verdict = rep.forward_holds && reverse ? MaxRuleVerdict::Equality : MaxRuleVerdict::InclusionOnly;
  if (!reverse) {
    double w = std::isfinite(rep.sup_side.sup()) ? rep.sup_side.sup() : rep.sup_side.inf();
    if (!std::isfinite(w)) w = rep.sup_side.nearest(0.0);
    rep.witness = w;
  }

  bool compact = true, freg = true;
  RealSet1D P = RealSet1D::all();
  for (size_t k = 0; k < parts.size(); ++k) {
    compact = compact && parts[k].is_bounded();
    freg = freg && f_regularity_check(gs[rep.active[k]], x, specs[rep.active[k]], {-1.0, 1.0}, DerivativeVariant::Dini).regular;
    P = P.intersect(parts[k].cone().polar());
  }
  RealSet1D coneK = K.is_empty() ? RealSet1D::point(0.0) : tangent_cone_1d(K, x);
  bool slater = false;
  for (double d : {-1.0, 1.0}) {
    if (!feasible_direction(K, x, d)) continue;
    bool all = !parts.empty();
    for (const RealSet1D& p : parts) all = all && p.support(d) < -tol::kStrictMargin;
    slater = slater || all;
  }
  rep.hypotheses = {{"Slater-type direction in the feasible cone of K", slater, ""},
                    {"active strong subdifferentials compact", compact, ""},
                    {"active functions F-regular", freg, ""},
                    {"polar of the union cone inside cone(K - x)", subset(P, coneK), P.to_string()}};
  return rep;
}

}  // namespace sqo

#include "sqopt/setoracle.hpp"

#include <cmath>

namespace sqo {

Vec vec1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}

SetOracle SetOracle::whole(int dim) {
  SetOracle s;
  s.dim_ = dim;
  s.member_ = [](const Vec&) { return true; };
  s.convex_ = true;
  s.polyhedral_ = true;
  if (dim == 1) s.line_ = RealSet1D::all();
  s.label = "R^" + std::to_string(dim);
  return s;
}

SetOracle SetOracle::from_line(const RealSet1D& set) {
  SetOracle s;
  s.dim_ = 1;
  s.line_ = set;
  s.member_ = [set](const Vec& x) { return set.contains(x[0]); };
  s.convex_ = set.is_convex();
  if (set.is_bounded() && !set.is_empty()) s.bounds_ = Box{vec1(set.inf()), vec1(set.sup())};
  s.label = set.to_string();
  return s;
}

SetOracle SetOracle::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw Error(ErrorCode::DimensionMismatch, "box corners differ in size");
  std::vector<Halfspace> hs;
  const int n = static_cast<int>(lo.size());
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    hs.push_back({e, hi[i]});
    hs.push_back({-e, -lo[i]});
  }
  SetOracle s = polyhedron(std::move(hs), Box{lo, hi});
  if (n == 1) s.line_ = RealSet1D::closed(lo[0], hi[0]);
  s.label = "box";
  return s;
}

SetOracle SetOracle::ball(const Vec& center, double radius) {
  SetOracle s;
  s.dim_ = static_cast<int>(center.size());
  s.member_ = [center, radius](const Vec& x) { return (x - center).norm() <= radius; };
  s.convex_ = true;
  Vec r = Vec::Constant(center.size(), radius);
  s.bounds_ = Box{center - r, center + r};
  if (s.dim_ == 1) s.line_ = RealSet1D::closed(center[0] - radius, center[0] + radius);
  s.label = "ball";
  return s;
}

SetOracle SetOracle::polyhedron(std::vector<Halfspace> hs, std::optional<Box> bounds) {
  if (hs.empty()) throw Error(ErrorCode::InvalidParams, "polyhedron needs at least one halfspace");
  SetOracle s;
  s.dim_ = static_cast<int>(hs.front().a.size());
  for (const Halfspace& h : hs)
    if (h.a.size() != s.dim_) throw Error(ErrorCode::DimensionMismatch, "halfspace dimension");
  s.halfspaces_ = hs;
  s.member_ = [hs](const Vec& x) {
    for (const Halfspace& h : hs)
      if (h.a.dot(x) > h.b) return false;
    return true;
  };
  s.polyhedral_ = true;
  s.convex_ = true;
  s.bounds_ = std::move(bounds);
  if (s.dim_ == 1) {
    double lo = -kInf, hi = kInf;
    for (const Halfspace& h : hs) {
      double a = h.a[0];
      if (a > 0) hi = std::min(hi, h.b / a);
      else if (a < 0) lo = std::max(lo, h.b / a);
      else if (h.b < 0) lo = kInf;
    }
    s.line_ = lo <= hi ? RealSet1D::closed(lo, hi) : RealSet1D::empty();
    if (std::isinf(lo) || std::isinf(hi)) s.line_ = RealSet1D::interval(lo, hi, true, true);
  }
  s.label = "polyhedron";
  return s;
}

SetOracle SetOracle::predicate(int dim, std::function<bool(const Vec&)> member, bool convex,
                               std::optional<Box> bounds) {
  SetOracle s;
  s.dim_ = dim;
  s.member_ = std::move(member);
  s.convex_ = convex;
  s.bounds_ = std::move(bounds);
  s.label = "predicate";
  return s;
}

bool SetOracle::contains(const Vec& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "set membership");
  return member_ && member_(x);
}

bool SetOracle::contains1(double x) const { return contains(vec1(x)); }

SetOracle SetOracle::intersect(const SetOracle& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "set intersection");
  SetOracle s;
  s.dim_ = dim_;
  auto a = member_;
  auto b = other.member_;
  s.member_ = [a, b](const Vec& x) { return a(x) && b(x); };
  s.convex_ = convex_ && other.convex_;
  if (line_ && other.line_) s.line_ = line_->intersect(*other.line_);
  if (polyhedral_ && other.polyhedral_) {
    s.polyhedral_ = true;
    s.halfspaces_ = halfspaces_;
    s.halfspaces_.insert(s.halfspaces_.end(), other.halfspaces_.begin(), other.halfspaces_.end());
  }
  if (bounds_ && other.bounds_) {
    s.bounds_ = Box{bounds_->lo.cwiseMax(other.bounds_->lo), bounds_->hi.cwiseMin(other.bounds_->hi)};
  } else if (bounds_) {
    s.bounds_ = bounds_;
  } else {
    s.bounds_ = other.bounds_;
  }
  if (s.line_ && s.line_->is_bounded() && !s.line_->is_empty())
    s.bounds_ = Box{vec1(s.line_->inf()), vec1(s.line_->sup())};
  s.label = label + " & " + other.label;
  return s;
}

SetOracle SetOracle::with_bounds(const Box& b) const {
  SetOracle s = *this;
  s.bounds_ = b;
  return s;
}

}  // namespace sqo

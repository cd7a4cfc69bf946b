#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqopt/common.hpp"
#include "sqopt/realset.hpp"

namespace sqo {

/// a . x <= b
struct Halfspace {
  Vec a;
  double b;
};

struct Box {
  Vec lo;
  Vec hi;
};

/// Membership oracle for a subset of R^n, optionally carrying an exact
/// description (an interval union in dimension one, or halfspaces).
class SetOracle {
 public:
  SetOracle() = default;

  static SetOracle whole(int dim);
  static SetOracle from_line(const RealSet1D& set);
  static SetOracle box(const Vec& lo, const Vec& hi);
  static SetOracle ball(const Vec& center, double radius);
  static SetOracle polyhedron(std::vector<Halfspace> hs, std::optional<Box> bounds = std::nullopt);
  static SetOracle predicate(int dim, std::function<bool(const Vec&)> member, bool convex,
                             std::optional<Box> bounds = std::nullopt);

  int dim() const { return dim_; }
  bool contains(const Vec& x) const;
  bool contains1(double x) const;

  const std::optional<RealSet1D>& line() const { return line_; }
  bool polyhedral() const { return polyhedral_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  bool convex() const { return convex_; }
  const std::optional<Box>& bounds() const { return bounds_; }

  /// Both memberships; exact descriptions and bounds are intersected when
  /// both operands carry them.
  SetOracle intersect(const SetOracle& other) const;
  SetOracle with_bounds(const Box& b) const;

  std::string label;

 private:
  int dim_ = 0;
  std::function<bool(const Vec&)> member_;
  std::optional<RealSet1D> line_;
  bool polyhedral_ = false;
  std::vector<Halfspace> halfspaces_;
  bool convex_ = false;
  std::optional<Box> bounds_;
};

Vec vec1(double x);

}  // namespace sqo

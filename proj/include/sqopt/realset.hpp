#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sqo {

/// One connected piece of a subset of the real line. Infinite endpoints are
/// always open.
struct Interval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool contains(double x) const;
};

/// A finite union of intervals kept in canonical form: sorted, pairwise
/// disjoint, non-touching, no empty pieces.
class RealSet1D {
 public:
  RealSet1D() = default;

  static RealSet1D empty() { return {}; }
  static RealSet1D all();
  static RealSet1D point(double a);
  static RealSet1D closed(double a, double b);
  static RealSet1D open(double a, double b);
  static RealSet1D interval(double lo, double hi, bool lo_closed, bool hi_closed);
  static RealSet1D from_parts(std::vector<Interval> parts);

  /// Accepts the canonical form produced by to_string(), plus "{a}" for a
  /// singleton, "R" for the line and p/q fractions as endpoints.
  static RealSet1D parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_all() const;
  bool is_singleton() const;
  bool is_bounded() const;
  bool is_closed() const;
  bool is_convex() const { return parts_.size() <= 1; }

  bool contains(double x) const;
  /// Membership up to an absolute slack on every endpoint.
  bool contains_approx(double x, double slack) const;

  double inf() const;  // +inf for the empty set
  double sup() const;  // -inf for the empty set
  double distance(double x) const;  // +inf for the empty set
  /// Point of the closure nearest to x (NaN for the empty set).
  double nearest(double x) const;
  /// sup over s in the set of s*d; -inf for the empty set.
  double support(double d) const;

  RealSet1D unite(const RealSet1D& other) const;
  RealSet1D intersect(const RealSet1D& other) const;
  /// A + B, with A + {} = {}.
  RealSet1D minkowski(const RealSet1D& other) const;
  RealSet1D scale(double t) const;
  RealSet1D closure() const;
  RealSet1D hull() const;
  /// Union over t > 0 of tA; empty for empty A.
  RealSet1D positive_hull() const;
  /// positive_hull() together with 0; cone({}) = {0}.
  RealSet1D cone() const;
  /// {v : v*s <= 0 for all s in the set}; the polar of {} is R.
  RealSet1D polar() const;
  /// Asymptotic cone of a closed set; {} for the empty set.
  RealSet1D horizon() const;

  bool operator==(const RealSet1D& other) const;
  bool operator!=(const RealSet1D& other) const { return !(*this == other); }
  /// Same number of pieces, matching flags, endpoints within tol (infinite
  /// endpoints must match exactly).
  bool approx_equal(const RealSet1D& other, double tol) const;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace sqo

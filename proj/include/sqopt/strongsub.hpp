#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqopt/funcspace.hpp"
#include "sqopt/realset.hpp"

namespace sqo {

/// Parameters (beta, gamma, K) of the strong subdifferential.
struct SubdiffSpec {
  double beta = 1.0;
  double gamma = 0.0;
  SetOracle K;

  void validate(int dim) const;
};

SubdiffSpec make_spec(double beta, double gamma, const RealSet1D& K);

/// Worst lambda in [0,1] for the concave quadratic
/// phi(lambda) = lambda*a - lambda^2*b, a = <xi,d>/beta + gamma|d|^2/2,
/// b = (1/beta + gamma)|d|^2/2, and the value sup phi.
struct LambdaWorst {
  double lambda = 0.0;
  double sup_phi = 0.0;
};

LambdaWorst worst_lambda_margin(const Vec& xi, const Vec& d, double beta, double gamma);
LambdaWorst worst_lambda_margin(double xi, double d, double beta, double gamma);

struct YGridOptions {
  int uniform = 2048;
  int geometric = 64;       // per side, toward xbar
  double radius = 2.0;      // uniform window half-width
  double near = 1e-8;       // smallest geometric offset
  int far = 48;             // geometric points out to the sentinel when K is unbounded
  int samples_nd = 4096;    // quasi-random interior points in dimension >= 2
  std::uint64_t seed = 1;
  std::vector<Vec> extra;
};

/// Test points y of K with finite h(y), and r(y) = max{h(y),h(xbar)} - h(xbar).
struct YGrid {
  Vec xbar;
  double hx = 0.0;
  std::vector<Vec> ys;
  std::vector<double> rhs;
  int vacuous = 0;  // points of K with h(y) = +inf
};

YGrid build_y_grid(const FnModel& h, const Vec& xbar, const SetOracle& K, const YGridOptions& opt = {},
                   const std::vector<Vec>& directions = {});

struct MembershipVerdict {
  bool member = true;
  double margin = kInf;  // min over the grid of r(y) - sup phi
  Vec witness_y;
  double witness_lambda = 0.0;
  double violation = 0.0;
  int grid_size = 0;
  bool grid_certified = true;
};

MembershipVerdict strong_member(const FnModel& h, const Vec& xbar, const SubdiffSpec& spec, const Vec& xi,
                                const YGridOptions& opt = {}, double tol = tol::kMember);
MembershipVerdict strong_member_on(const YGrid& grid, const SubdiffSpec& spec, const Vec& xi,
                                   double tol = tol::kMember);

/// <xi, y - xbar> <= -(beta*gamma/2)|y - xbar|^2 on S_h(xbar) cap K.
MembershipVerdict ss_member(const FnModel& h, const Vec& xbar, double beta, double gamma, const Vec& xi,
                            const SetOracle* K = nullptr, const YGridOptions& opt = {}, double tol = tol::kMember);

/// Inner/outer enclosure of a one-dimensional set produced by bisection.
struct IntervalApprox {
  RealSet1D inner;
  RealSet1D outer;
  double resolution = 0.0;
  double best_margin = 0.0;
  bool sampled = false;  // limits read off schedules rather than bisection
  std::string note;

  /// inner with endpoints within `snap` of zero moved onto zero; a moved
  /// endpoint is closed exactly when zero_member says so.
  RealSet1D snapped(bool zero_member, double snap) const;
};

struct IntervalOptions {
  double resolution = 1e-7;
  double lo = -tol::kSentinel;
  double hi = tol::kSentinel;
  YGridOptions grid;
  double tol = tol::kMember;
};

IntervalApprox strong_interval_1d(const FnModel& h, double xbar, const SubdiffSpec& spec,
                                  const IntervalOptions& opt = {});

/// Strong subdifferential reconstructed and snapped at zero, ready for cone
/// arithmetic.
RealSet1D strong_set_1d(const FnModel& h, double xbar, const SubdiffSpec& spec, const IntervalOptions& opt = {});

enum class SubdiffKind { Regular, Limiting, Horizon, FenchelMoreau, GreenbergPierskalla, Quasiconvex };

const char* to_string(SubdiffKind k);
SubdiffKind subdiff_kind_from_string(const std::string& s);

IntervalApprox classical_subdiff_1d(const FnModel& h, double xbar, SubdiffKind kind, const LimitSchedule& sched = {},
                                    const YGridOptions& grid = {});

/// N_h(x) = (S_h(x) - x)^o, exact on the line given the y-grid.
RealSet1D normal_operator_1d(const FnModel& h, double xbar, const YGridOptions& grid = {});

enum class DerivativeVariant { Dini, Hadamard };

struct RegularityReport {
  bool regular = true;
  bool vacuous = false;  // strong subdifferential empty
  double counter_direction = 0.0;
  double derivative = 0.0;
  double support = 0.0;
  std::vector<double> directions;
};

/// F-regularity (Dini) or F_H-regularity (Hadamard) on the line: for tested
/// directions d in T(K, x), g'(x; d) >= 0 must force sigma(subdiff; d) >= 0.
RegularityReport f_regularity_check(const FnModel& h, double xbar, const SubdiffSpec& spec,
                                    const std::vector<double>& directions = {-1.0, 1.0},
                                    DerivativeVariant variant = DerivativeVariant::Hadamard,
                                    const LimitSchedule& sched = {});

}  // namespace sqo

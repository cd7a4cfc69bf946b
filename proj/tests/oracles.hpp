#pragma once
// Reference computations kept independent of the library's grids and
// bisection: closed-form per-y bounds and plain brute force.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// inf over lambda in (0,1] of beta*r/lambda - beta*gamma*d^2/2 + lambda*(1+beta*gamma)*d^2/2,
/// the largest admissible value of xi*d at one test point (r >= 0).
inline double per_point_bound(double r, double d, double beta, double gamma) {
  const double c = 0.5 * (1 + beta * gamma) * d * d;
  const double base = -0.5 * beta * gamma * d * d;
  if (r <= 0) return base;  // lambda -> 0
  double lam = std::sqrt(beta * r / c);
  lam = std::min(lam, 1.0);
  return beta * r / lam + base + lam * c;
}

/// [lo, hi] from the per-point bounds over the sample ys (empty when lo > hi).
struct Envelope {
  double lo = -kInf;
  double hi = kInf;
  bool empty() const { return lo > hi; }
};

inline Envelope envelope(const std::function<double(double)>& h, double x, double beta, double gamma,
                         const std::vector<double>& ys) {
  Envelope e;
  const double hx = h(x);
  for (double y : ys) {
    double hy = h(y);
    if (!std::isfinite(hy) || std::abs(y - x) < 1e-12) continue;  // rounding noise dominates r/d
    double r = std::max(hy, hx) - hx;
    double d = y - x;
    double m = per_point_bound(r, d, beta, gamma);
    if (d > 0) e.hi = std::min(e.hi, m / d);
    else e.lo = std::max(e.lo, m / d);
  }
  return e;
}

/// Dense sample of [a, b] with extra points accumulating at x.
inline std::vector<double> dense(double a, double b, double x, int n = 20001) {
  std::vector<double> ys;
  for (int i = 0; i < n; ++i) ys.push_back(a + (b - a) * i / (n - 1));
  for (int k = 1; k <= 60; ++k) {
    double t = std::pow(0.7, k);
    if (x + t <= b) ys.push_back(x + t);
    if (x - t >= a) ys.push_back(x - t);
  }
  return ys;
}

/// Membership by brute force over y and a uniform lambda grid.
inline bool brute_member(const std::function<double(double)>& h, double x, double beta, double gamma, double xi,
                         const std::vector<double>& ys, int lambdas = 2001, double tol = 1e-9) {
  const double hx = h(x);
  for (double y : ys) {
    double hy = h(y);
    if (!std::isfinite(hy)) continue;
    double lhs = std::max(hy, hx) - hx, d = y - x;
    for (int i = 0; i <= lambdas - 1; ++i) {
      double l = static_cast<double>(i) / (lambdas - 1);
      double rhs = l / beta * xi * d + 0.5 * l * (gamma - l / beta - l * gamma) * d * d;
      if (rhs > lhs + tol) return false;
    }
  }
  return true;
}

/// max over a uniform lambda grid of lambda*a - lambda^2*b.
inline std::pair<double, double> grid_max(double a, double b, int n) {
  double best = -kInf, arg = 0;
  for (int i = 0; i < n; ++i) {
    double l = static_cast<double>(i) / (n - 1);
    double v = l * a - l * l * b;
    if (v > best) best = v, arg = l;
  }
  return {arg, best};
}

}  // namespace oracle

#include "sqopt/convexsets.hpp"

#include <algorithm>
#include <cmath>

namespace sqo {

PolarVerdict polar_member(const Vec& v, const std::vector<Vec>& samples, const Vec& x, double tol) {
  PolarVerdict out;
  for (const Vec& s : samples) {
    if (s.size() != v.size() || x.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "polar_member");
    double ip = v.dot(s - x);
    if (ip > out.worst) {
      out.worst = ip;
      out.witness = s;
    }
  }
  out.member = out.worst <= tol * std::max(1.0, v.norm());
  return out;
}

namespace {

std::vector<Interval> closed_parts(const RealSet1D& S) { return S.closure().parts(); }

}  // namespace

RealSet1D tangent_cone_1d(const RealSet1D& S, double x) {
  for (const Interval& p : closed_parts(S)) {
    if (x < p.lo || x > p.hi) continue;
    if (p.lo == p.hi) return RealSet1D::point(0.0);
    if (x > p.lo && x < p.hi) return RealSet1D::all();
    if (x == p.lo) return RealSet1D::interval(0, kInf, true, false);
    return RealSet1D::interval(-kInf, 0, false, true);
  }
  throw Error(ErrorCode::PointNotInSet, "tangent cone at " + fmt_double(x) + " outside " + S.to_string());
}

bool tangent_contains(const SetOracle& K, const Vec& x, const Vec& d, double tol) {
  if (x.size() != K.dim() || d.size() != K.dim()) throw Error(ErrorCode::DimensionMismatch, "tangent_contains");
  if (K.line()) return tangent_cone_1d(*K.line(), x[0]).contains_approx(d[0], tol);
  if (!K.contains(x)) throw Error(ErrorCode::PointNotInSet, "tangent cone base point outside the set");
  if (K.polyhedral()) {
    for (const Halfspace& h : K.halfspaces()) {
      if (std::abs(h.a.dot(x) - h.b) <= tol::kActive * std::max(1.0, std::abs(h.b)) && h.a.dot(d) > tol)
        return false;
    }
    return true;
  }
  for (int k = 0; k < 40; ++k) {
    double t = std::pow(0.5, k);
    if (K.contains(x + t * d)) return true;
  }
  return d.norm() <= tol;
}

RealSet1D normal_cone_1d(const RealSet1D& S, double x) {
  for (const Interval& p : closed_parts(S)) {
    if (x < p.lo || x > p.hi) continue;
    if (p.lo == p.hi) return RealSet1D::all();
    if (x > p.lo && x < p.hi) return RealSet1D::point(0.0);
    if (x == p.lo) return RealSet1D::interval(-kInf, 0, false, true);
    return RealSet1D::interval(0, kInf, true, false);
  }
  throw Error(ErrorCode::PointNotInSet, "normal cone at " + fmt_double(x) + " outside " + S.to_string());
}

std::vector<Vec> normal_generators(const SetOracle& omega, const Vec& x, double tol) {
  if (!omega.polyhedral()) throw Error(ErrorCode::InvalidParams, "normal generators need a polyhedral set");
  if (!omega.contains(x)) throw Error(ErrorCode::PointNotInSet, "normal cone base point outside the set");
  std::vector<Vec> gens;
  for (const Halfspace& h : omega.halfspaces())
    if (std::abs(h.a.dot(x) - h.b) <= tol * std::max(1.0, std::abs(h.b))) gens.push_back(h.a);
  return gens;
}

double cone_distance(const Vec& w, const std::vector<Vec>& gens) {
  const int m = static_cast<int>(gens.size());
  if (m > 16) throw Error(ErrorCode::InvalidParams, "too many cone generators");
  double best = w.norm();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Mat G(w.size(), static_cast<int>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) G.col(static_cast<int>(j)) = gens[idx[j]];
    Vec a = G.colPivHouseholderQr().solve(w);
    if ((a.array() < -1e-14).any()) continue;
    best = std::min(best, (w - G * a).norm());
  }
  return best;
}

RealSet1D horizon_set_1d(const RealSet1D& A) { return A.closure().horizon(); }

double support_value(const RealSet1D& A, double d) { return A.support(d); }

double support_value(const std::vector<Vec>& samples, const Vec& d) {
  double best = -kInf;
  for (const Vec& s : samples) best = std::max(best, s.dot(d));
  return best;
}

Vec min_norm_in_hull(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidParams, "min_norm_in_hull of no points");
  const int n = static_cast<int>(points.front().size());
  for (const Vec& p : points)
    if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "min_norm_in_hull");
  double scale = 0;
  for (const Vec& p : points) scale = std::max(scale, p.squaredNorm());
  const double eps = tol * std::max(1.0, scale);

  size_t first = 0;
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i].squaredNorm() < points[first].squaredNorm()) first = i;
  std::vector<size_t> S{first};
  std::vector<double> lam{1.0};
  auto combo = [&](const std::vector<double>& w) {
    Vec x = Vec::Zero(n);
    for (size_t i = 0; i < S.size(); ++i) x += w[i] * points[S[i]];
    return x;
  };

  for (int major = 0; major < 1000; ++major) {
    Vec x = combo(lam);
    size_t j = 0;
    double best = kInf;
    for (size_t i = 0; i < points.size(); ++i) {
      double v = x.dot(points[i]);
      if (v < best) best = v, j = i;
    }
    if (best >= x.squaredNorm() - eps || std::find(S.begin(), S.end(), j) != S.end()) return x;
    S.push_back(j);
    lam.push_back(0.0);
    for (int minor = 0; minor < 1000; ++minor) {
      const int k = static_cast<int>(S.size());
      Mat M = Mat::Zero(k + 1, k + 1);
      Vec rhs = Vec::Zero(k + 1);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) M(a, b) = points[S[a]].dot(points[S[b]]);
        M(a, k) = 1.0;
        M(k, a) = 1.0;
      }
      rhs[k] = 1.0;
      Vec sol = M.colPivHouseholderQr().solve(rhs);
      std::vector<double> alpha(k);
      bool positive = true;
      for (int a = 0; a < k; ++a) {
        alpha[a] = sol[a];
        if (alpha[a] <= 1e-14) positive = false;
      }
      if (positive) {
        lam = alpha;
        break;
      }
      double theta = 1.0;
      for (int a = 0; a < k; ++a)
        if (alpha[a] <= 1e-14 && lam[a] - alpha[a] > 0) theta = std::min(theta, lam[a] / (lam[a] - alpha[a]));
      for (int a = 0; a < k; ++a) lam[a] = lam[a] + theta * (alpha[a] - lam[a]);
      std::vector<size_t> S2;
      std::vector<double> l2;
      for (int a = 0; a < k; ++a) {
        if (lam[a] > 1e-14) {
          S2.push_back(S[a]);
          l2.push_back(lam[a]);
        }
      }
      if (S2.empty()) {
        S2.push_back(S.back());
        l2.push_back(1.0);
      }
      double sum = 0;
      for (double v : l2) sum += v;
      for (double& v : l2) v /= sum;
      S = S2;
      lam = l2;
    }
  }
  return combo(lam);
}

}  // namespace sqo

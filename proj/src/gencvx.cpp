#include "sqopt/gencvx.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace sqo {

namespace {

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

Box region_box(const SetOracle& region) {
  if (region.dim() == 1 && region.line()) {
    const RealSet1D& l = *region.line();
    if (l.is_empty() || !l.is_bounded()) throw Error(ErrorCode::InvalidRegion, "region must be bounded and nonempty");
    return Box{vec1(l.inf()), vec1(l.sup())};
  }
  if (!region.bounds()) throw Error(ErrorCode::InvalidRegion, "region needs a bounding box for sampling");
  return *region.bounds();
}

}  // namespace

std::vector<Vec> sample_region(const SetOracle& region, int count, std::uint64_t seed) {
  if (count < 2) throw Error(ErrorCode::InvalidParams, "need at least two samples");
  Box box = region_box(region);
  const int n = region.dim();
  std::vector<Vec> out;
  if (n == 1) {
    const double lo = box.lo[0], hi = box.hi[0];
    std::vector<double> xs;
    if (region.line()) {
      for (const Interval& p : region.line()->parts()) {
        if (p.lo_closed) xs.push_back(p.lo);
        if (p.hi_closed) xs.push_back(p.hi);
      }
    }
    for (int i = 0; i < count * 4; ++i)
      xs.push_back(lo + (hi - lo) * i / (count * 4 - 1));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> kept;
    for (double x : xs)
      if (region.contains1(x)) kept.push_back(x);
    if (kept.empty()) throw Error(ErrorCode::InvalidRegion, "no sample falls in the region");
    // Thin to `count` points spread over the members.
    for (int i = 0; i < count && !kept.empty(); ++i) {
      size_t k = kept.size() == 1 ? 0 : static_cast<size_t>(std::lround(double(i) * (kept.size() - 1) / (count - 1)));
      if (out.empty() || out.back()[0] != kept[k]) out.push_back(vec1(kept[k]));
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec shift(n);
  for (int i = 0; i < n; ++i) shift[i] = unit(rng);
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t k = 1; static_cast<int>(out.size()) < count && k < 200000; ++k) {
    Vec y(n);
    for (int i = 0; i < n; ++i) {
      double u = radical_inverse(k, primes[i % 12]) + shift[i];
      y[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (u - std::floor(u));
    }
    if (region.contains(y)) out.push_back(y);
  }
  if (static_cast<int>(out.size()) < 2) throw Error(ErrorCode::InvalidRegion, "region too thin to sample");
  return out;
}

namespace {

struct Triple {
  Vec x, y;
  double lambda;
};

double sq_violation(const FnModel& h, const Vec& x, double hx, const Vec& y, double hy, double lambda, double gamma) {
  if (hx == kInf || hy == kInf) return -kInf;
  double mx = std::max(hx, hy);
  double hz = h.eval(lambda * y + (1 - lambda) * x);
  if (hz == kInf) return kInf;
  double excess = hz - (mx - lambda * (1 - lambda) * 0.5 * gamma * (x - y).squaredNorm());
  return excess / std::max(1.0, std::abs(mx));
}

}  // namespace

SQReport sq_check(const FnModel& h, const SetOracle& region, double gamma, const SamplingPlan& plan) {
  if (!(gamma >= 0)) throw Error(ErrorCode::InvalidParams, "gamma must be nonnegative");
  if (region.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "region");
  std::vector<Vec> pts = sample_region(region, plan.points, plan.seed);
  std::vector<double> vals(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) vals[i] = h.eval(pts[i]);
  SQReport rep;
  std::vector<std::pair<double, Triple>> top;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      for (int l = 0; l < plan.lambdas; ++l) {
        double lambda = plan.lambdas == 1 ? 0.5 : double(l) / (plan.lambdas - 1);
        double v = sq_violation(h, pts[i], vals[i], pts[j], vals[j], lambda, gamma);
        ++rep.samples;
        if (v > rep.violation) {
          rep.violation = v;
          rep.x = pts[i];
          rep.y = pts[j];
          rep.lambda = lambda;
        }
        if (top.size() < 4 || v > top.back().first) {
          top.push_back({v, Triple{pts[i], pts[j], lambda}});
          std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
          if (top.size() > 4) top.pop_back();
        }
      }
    }
  }
  if (plan.polish && rep.violation <= tol::kMember) {
    Box box = region_box(region);
    double diam = (box.hi - box.lo).norm();
    const int n = h.dim();
    for (auto& [v0, t] : top) {
      double best = v0;
      Triple cur = t;
      for (double step = 0.1 * diam; step > 1e-7 * diam; step *= 0.5) {
        bool improved = true;
        for (int round = 0; round < 50 && improved; ++round) {
          improved = false;
          for (int which = 0; which < 2 * n + 1; ++which) {
            for (double s : {step, -step}) {
              Triple c = cur;
              if (which < n) c.x[which] += s;
              else if (which < 2 * n) c.y[which - n] += s;
              else c.lambda = std::clamp(c.lambda + s / diam, 0.0, 1.0);
              if (!region.contains(c.x) || !region.contains(c.y)) continue;
              double v = sq_violation(h, c.x, h.eval(c.x), c.y, h.eval(c.y), c.lambda, gamma);
              ++rep.samples;
              if (v > best) {
                best = v;
                cur = c;
                improved = true;
              }
            }
          }
        }
      }
      if (best > rep.violation) {
        rep.violation = best;
        rep.x = cur.x;
        rep.y = cur.y;
        rep.lambda = cur.lambda;
      }
    }
  }
  rep.verdict = rep.violation > tol::kMember ? SQVerdict::Refuted : SQVerdict::Verified;
  return rep;
}

ModulusEstimate modulus_estimate(const FnModel& h, const SetOracle& region, double gamma_max, double resolution,
                                 const SamplingPlan& plan) {
  if (!(gamma_max > 0) || !(resolution > 0)) throw Error(ErrorCode::InvalidParams, "bad modulus bracket");
  ModulusEstimate est;
  SQReport r0 = sq_check(h, region, 0.0, plan);
  if (r0.verdict == SQVerdict::Refuted) {
    est.quasiconvex = false;
    est.gamma_hi = 0.0;
    est.witness = r0;
    return est;
  }
  SQReport rhi = sq_check(h, region, gamma_max, plan);
  if (rhi.verdict == SQVerdict::Verified) {
    est.gamma_lo = gamma_max;
    est.gamma_hi = kInf;
    return est;
  }
  double lo = 0.0, hi = gamma_max;
  est.witness = rhi;
  while (hi - lo > resolution) {
    double mid = 0.5 * (lo + hi);
    SQReport r = sq_check(h, region, mid, plan);
    if (r.verdict == SQVerdict::Verified) {
      lo = mid;
    } else {
      hi = mid;
      est.witness = r;
    }
  }
  est.gamma_lo = lo;
  est.gamma_hi = hi;
  return est;
}

double QFPInstance::numerator(const Vec& x) const { return 0.5 * x.dot(A * x) + a.dot(x) + alpha; }
double QFPInstance::denominator(const Vec& x) const { return 0.5 * x.dot(B * x) + b.dot(x) + beta; }

double QFPInstance::lambda_min() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

QFPInstance qfp_from_params(const Params& p) {
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = p.find(k);
    if (it == p.end()) throw Error(ErrorCode::InvalidParams, "qfp needs parameter " + k);
    return it->second;
  };
  QFPInstance q;
  q.A = parse_matrix(get("A"));
  const int n = static_cast<int>(q.A.rows());
  q.a = p.count("a") ? parse_vector(p.at("a")) : Vec(Vec::Zero(n));
  q.alpha = param_double(p, "alpha", 0.0);
  q.B = p.count("B") ? parse_matrix(p.at("B")) : Mat(Mat::Zero(n, n));
  q.b = p.count("b") ? parse_vector(p.at("b")) : Vec(Vec::Zero(n));
  q.beta = param_double(p, "beta", 1.0);
  q.m = param_double(p, "m", 1.0);
  q.M = param_double(p, "M", 1.0);
  return q;
}

SetOracle qfp_region(const QFPInstance& q) {
  if (q.B.isZero(0.0)) {
    std::vector<Halfspace> hs{{q.b, q.M - q.beta}, {-q.b, q.beta - q.m}};
    if (q.b.isZero(0.0)) {
      bool inside = q.m <= q.beta && q.beta <= q.M;
      SetOracle s = inside ? SetOracle::whole(q.dim())
                           : SetOracle::predicate(q.dim(), [](const Vec&) { return false; }, true);
      s.label = inside ? "qfp band (all of R^n)" : "qfp band (empty)";
      return s;
    }
    SetOracle s = SetOracle::polyhedron(hs);
    s.label = "qfp slab";
    return s;
  }
  QFPInstance c = q;
  SetOracle s = SetOracle::predicate(
      q.dim(), [c](const Vec& x) { double g = c.denominator(x); return g >= c.m && g <= c.M; }, false);
  s.label = "qfp level band";
  return s;
}

FnModel qfp_build(const QFPInstance& q) {
  const int n = q.dim();
  std::vector<std::string> bad;
  if (q.A.cols() != n || q.a.size() != n || q.B.rows() != n || q.B.cols() != n || q.b.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "qfp data sizes disagree");
  if (!q.A.isApprox(q.A.transpose())) bad.push_back("A is not symmetric");
  if (!q.B.isApprox(q.B.transpose()) && !q.B.isZero(0.0)) bad.push_back("B is not symmetric");
  if (q.A.isApprox(q.A.transpose()) && !(q.lambda_min() > 0)) bad.push_back("A is not positive definite");
  if (!(q.m > 0)) bad.push_back("m must be positive");
  if (!(q.m <= q.M)) bad.push_back("m must not exceed M");
  SetOracle K = qfp_region(q);
  if (bad.empty() && !q.B.isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(q.B, Eigen::EigenvaluesOnly);
    bool nsd = es.eigenvalues().maxCoeff() <= 0, psd = es.eigenvalues().minCoeff() >= 0;
    SetOracle boxed = K.with_bounds(Box{Vec::Constant(n, -10.0), Vec::Constant(n, 10.0)});
    bool nonneg = true, nonpos = true;
    std::vector<Vec> pts;
    try {
      pts = sample_region(boxed, 512, 11);
    } catch (const Error&) {
    }
    for (const Vec& x : pts) {
      double f = q.numerator(x);
      nonneg = nonneg && f >= 0;
      nonpos = nonpos && f <= 0;
    }
    if (!((nonneg && nsd) || (nonpos && psd)))
      bad.push_back("none of: B = 0; numerator >= 0 on K with B negative semidefinite; numerator <= 0 on K with B positive semidefinite");
  }
  if (!bad.empty()) {
    std::string msg;
    for (const std::string& s : bad) msg += (msg.empty() ? "" : "; ") + s;
    throw Error(ErrorCode::InvariantViolation, msg);
  }
  FnAnnotations ann;
  ann.lsc = ann.quasiconvex = true;
  ann.sq_modulus = q.modulus();
  ann.sq_region = K;
  QFPInstance c = q;
  ann.gradient = [c](const Vec& x) {
    double f = c.numerator(x), g = c.denominator(x);
    Vec df = c.A * x + c.a, dg = c.B * x + c.b;
    return Vec((df * g - f * dg) / (g * g));
  };
  return FnModel("qfp", n, [c](const Vec& x) { return c.numerator(x) / c.denominator(x); }, K, ann);
}

StrongMinReport strong_minimum_check(const FnModel& h, const Vec& xbar, const SetOracle& region, double gamma,
                                     const SamplingPlan& plan) {
  if (!(gamma >= 0)) throw Error(ErrorCode::InvalidParams, "gamma must be nonnegative");
  double hx = h.eval(xbar);
  if (hx == kInf) throw Error(ErrorCode::PointOutsideDomain, "h(xbar) = +inf");
  std::vector<Vec> pts = sample_region(region, std::max(plan.points, 16) * 8, plan.seed);
  for (int i = 0; i < h.dim(); ++i) {
    for (double s : {1.0, -1.0}) {
      for (int k = 0; k < 40; ++k) {
        Vec y = xbar;
        y[i] += s * std::pow(0.5, k);
        if (region.contains(y)) pts.push_back(y);
      }
    }
  }
  StrongMinReport rep;
  for (const Vec& y : pts) {
    double hy = h.eval(y);
    ++rep.samples;
    double gap = hy - hx - gamma * (y - xbar).squaredNorm();
    if (gap < rep.gap) {
      rep.gap = gap;
      rep.witness = y;
    }
  }
  rep.holds = rep.gap >= -tol::kMember * std::max(1.0, std::abs(hx));
  return rep;
}

}  // namespace sqo

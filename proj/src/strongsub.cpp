#include "sqopt/strongsub.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sqopt/convexsets.hpp"

namespace sqo {

void SubdiffSpec::validate(int dim) const {
  if (!(beta > 0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidParams, "beta must be positive");
  if (!(gamma >= 0) || !std::isfinite(gamma)) throw Error(ErrorCode::InvalidParams, "gamma must be nonnegative");
  if (K.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "K has the wrong dimension");
}

SubdiffSpec make_spec(double beta, double gamma, const RealSet1D& K) {
  return SubdiffSpec{beta, gamma, SetOracle::from_line(K)};
}

LambdaWorst worst_lambda_margin(double xi, double d, double beta, double gamma) {
  double dd = d * d;
  double a = xi * d / beta + 0.5 * gamma * dd;
  double b = 0.5 * (1.0 / beta + gamma) * dd;
  if (b <= 0) return {0.0, 0.0};
  double lam = std::clamp(a / (2 * b), 0.0, 1.0);
  return {lam, lam * a - lam * lam * b};
}

LambdaWorst worst_lambda_margin(const Vec& xi, const Vec& d, double beta, double gamma) {
  if (xi.size() != d.size()) throw Error(ErrorCode::DimensionMismatch, "worst_lambda_margin");
  if (!(beta > 0) || !(gamma >= 0)) throw Error(ErrorCode::InvalidParams, "need beta > 0, gamma >= 0");
  double dd = d.squaredNorm();
  double a = xi.dot(d) / beta + 0.5 * gamma * dd;
  double b = 0.5 * (1.0 / beta + gamma) * dd;
  if (b <= 0) return {0.0, 0.0};
  double lam = std::clamp(a / (2 * b), 0.0, 1.0);
  return {lam, lam * a - lam * lam * b};
}

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

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

void add_line_points(std::vector<double>& ys, const RealSet1D& line, double x, const YGridOptions& opt,
                     const std::vector<double>& breakpoints) {
  const double R = opt.radius;
  RealSet1D window = line.intersect(RealSet1D::closed(x - R, x + R));
  double total = 0;
  for (const Interval& p : window.parts()) total += p.hi - p.lo;
  auto nudge_in = [](double e, double dir) { return e + dir * 1e-12 * std::max(1.0, std::abs(e)); };
  for (const Interval& p : window.parts()) {
    if (p.lo == p.hi) {
      ys.push_back(p.lo);
      continue;
    }
    int n = std::max(2, static_cast<int>(std::lround(opt.uniform * (p.hi - p.lo) / total)));
    for (int i = 0; i <= n; ++i) ys.push_back(p.lo + (p.hi - p.lo) * i / n);
    ys.push_back(p.lo_closed ? p.lo : nudge_in(p.lo, 1));
    ys.push_back(p.hi_closed ? p.hi : nudge_in(p.hi, -1));
  }
  for (const Interval& p : line.parts()) {
    if (std::isfinite(p.lo)) ys.push_back(p.lo_closed ? p.lo : nudge_in(p.lo, 1));
    if (std::isfinite(p.hi)) ys.push_back(p.hi_closed ? p.hi : nudge_in(p.hi, -1));
  }
  for (int s : {-1, 1}) {
    for (int i = 0; i < opt.geometric; ++i) {
      double r = opt.near * std::pow(R / opt.near, opt.geometric > 1 ? double(i) / (opt.geometric - 1) : 0.0);
      ys.push_back(x + s * r);
    }
  }
  for (double b : breakpoints) {
    double e = 1e-9 * std::max(1.0, std::abs(b));
    ys.insert(ys.end(), {b, b - e, b + e});
  }
  if (std::isinf(line.sup()) && opt.far > 0) {
    for (int i = 1; i <= opt.far; ++i) ys.push_back(x + R * std::pow(tol::kSentinel / R, double(i) / opt.far));
  }
  if (std::isinf(line.inf()) && opt.far > 0) {
    for (int i = 1; i <= opt.far; ++i) ys.push_back(x - R * std::pow(tol::kSentinel / R, double(i) / opt.far));
  }
}

}  // namespace

YGrid build_y_grid(const FnModel& h, const Vec& xbar, const SetOracle& K, const YGridOptions& opt,
                   const std::vector<Vec>& directions) {
  const int n = h.dim();
  if (xbar.size() != n || K.dim() != n) throw Error(ErrorCode::DimensionMismatch, "y-grid");
  YGrid g;
  g.xbar = xbar;
  g.hx = h.eval(xbar);
  if (g.hx == kInf) throw Error(ErrorCode::PointOutsideDomain, "h(xbar) = +inf");
  if (!K.contains(xbar)) throw Error(ErrorCode::PointOutsideDomain, "xbar is not in K");

  std::vector<Vec> cand;
  if (n == 1) {
    std::vector<double> ys;
    const double x = xbar[0];
    // Without an exact description, sample the bounds (or the whole line) and
    // let membership filter the points.
    RealSet1D line = K.line()     ? *K.line()
                     : K.bounds() ? RealSet1D::closed(K.bounds()->lo[0], K.bounds()->hi[0])
                                  : RealSet1D::all();
    add_line_points(ys, line, x, opt, h.ann().breakpoints);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (double y : ys) cand.push_back(vec1(y));
  } else {
    Vec lo = xbar.array() - opt.radius;
    Vec hi = xbar.array() + opt.radius;
    if (K.bounds()) {
      lo = lo.cwiseMax(K.bounds()->lo);
      hi = hi.cwiseMin(K.bounds()->hi);
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec shift(n);
    for (int i = 0; i < n; ++i) shift[i] = unit(rng);
    for (int k = 1; k <= opt.samples_nd; ++k) {
      Vec y(n);
      for (int i = 0; i < n; ++i) {
        double u = radical_inverse(static_cast<std::uint64_t>(k), kPrimes[i % 12]) + shift[i];
        y[i] = lo[i] + (hi[i] - lo[i]) * (u - std::floor(u));
      }
      cand.push_back(y);
    }
    std::vector<Vec> dirs;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      dirs.push_back(e);
      dirs.push_back(-e);
    }
    for (const Vec& d : directions) {
      if (d.size() != n) throw Error(ErrorCode::DimensionMismatch, "grid direction");
      if (d.norm() > 0) {
        dirs.push_back(d / d.norm());
        dirs.push_back(-d / d.norm());
      }
    }
    double reach = K.bounds() ? opt.radius : tol::kSentinel;
    for (const Vec& u : dirs) {
      for (int i = 0; i < opt.geometric; ++i) {
        double r = opt.near * std::pow(opt.radius / opt.near, double(i) / std::max(1, opt.geometric - 1));
        cand.push_back(xbar + r * u);
      }
      if (reach > opt.radius)
        for (int i = 1; i <= opt.far; ++i) cand.push_back(xbar + opt.radius * std::pow(reach / opt.radius, double(i) / opt.far) * u);
    }
  }
  for (const Vec& e : opt.extra) cand.push_back(e);

  for (const Vec& y : cand) {
    if (y.size() != n || !K.contains(y)) continue;
    if ((y - xbar).squaredNorm() == 0) continue;
    double hy = h.eval(y);
    if (hy == kInf) {
      ++g.vacuous;
      continue;
    }
    g.ys.push_back(y);
    g.rhs.push_back(std::max(hy, g.hx) - g.hx);
  }
  return g;
}

MembershipVerdict strong_member_on(const YGrid& grid, const SubdiffSpec& spec, const Vec& xi, double tol) {
  MembershipVerdict v;
  v.grid_size = static_cast<int>(grid.ys.size());
  for (size_t i = 0; i < grid.ys.size(); ++i) {
    Vec d = grid.ys[i] - grid.xbar;
    LambdaWorst w = worst_lambda_margin(xi, d, spec.beta, spec.gamma);
    double m = grid.rhs[i] - w.sup_phi;
    if (m < v.margin) {
      v.margin = m;
      v.witness_y = grid.ys[i];
      v.witness_lambda = w.lambda;
    }
  }
  v.member = v.margin >= -tol;
  v.violation = v.member ? 0.0 : -v.margin;
  return v;
}

MembershipVerdict strong_member(const FnModel& h, const Vec& xbar, const SubdiffSpec& spec, const Vec& xi,
                                const YGridOptions& opt, double tol) {
  spec.validate(h.dim());
  if (xi.size() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "xi");
  YGrid g = build_y_grid(h, xbar, spec.K, opt, {xi});
  return strong_member_on(g, spec, xi, tol);
}

MembershipVerdict ss_member(const FnModel& h, const Vec& xbar, double beta, double gamma, const Vec& xi,
                            const SetOracle* K, const YGridOptions& opt, double tol) {
  if (!(beta > 0) || !(gamma >= 0)) throw Error(ErrorCode::InvalidParams, "need beta > 0, gamma >= 0");
  SetOracle whole = SetOracle::whole(h.dim());
  YGrid g = build_y_grid(h, xbar, K ? *K : whole, opt, {xi});
  MembershipVerdict v;
  for (size_t i = 0; i < g.ys.size(); ++i) {
    if (g.rhs[i] > 0) continue;  // only S_h(xbar)
    ++v.grid_size;
    Vec d = g.ys[i] - xbar;
    double m = -0.5 * beta * gamma * d.squaredNorm() - xi.dot(d);
    if (m < v.margin) {
      v.margin = m;
      v.witness_y = g.ys[i];
    }
  }
  v.member = v.margin >= -tol;
  v.violation = v.member ? 0.0 : -v.margin;
  return v;
}

RealSet1D IntervalApprox::snapped(bool zero_member, double snap) const {
  std::vector<Interval> parts = inner.parts();
  for (Interval& p : parts) {
    if (std::isfinite(p.lo) && std::abs(p.lo) <= snap) {
      p.lo = 0.0;
      p.lo_closed = zero_member;
    }
    if (std::isfinite(p.hi) && std::abs(p.hi) <= snap) {
      p.hi = 0.0;
      p.hi_closed = zero_member;
    }
  }
  RealSet1D s = RealSet1D::from_parts(parts);
  if (zero_member && !s.contains(0.0)) s = s.unite(RealSet1D::point(0.0));
  return s;
}

IntervalApprox strong_interval_1d(const FnModel& h, double xbar, const SubdiffSpec& spec, const IntervalOptions& opt) {
  if (h.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "strong_interval_1d needs dimension one");
  spec.validate(1);
  if (!(opt.lo < opt.hi) || !(opt.resolution > 0)) throw Error(ErrorCode::InvalidParams, "bad bracket");
  YGrid g = build_y_grid(h, vec1(xbar), spec.K, opt.grid);
  const size_t m = g.ys.size();
  std::vector<double> d(m), dd(m);
  for (size_t i = 0; i < m; ++i) {
    d[i] = g.ys[i][0] - xbar;
    dd[i] = d[i] * d[i];
  }
  const double beta = spec.beta, gamma = spec.gamma;
  auto margin = [&](double xi) {
    double best = kInf;
    for (size_t i = 0; i < m; ++i) {
      double a = xi * d[i] / beta + 0.5 * gamma * dd[i];
      double b = 0.5 * (1.0 / beta + gamma) * dd[i];
      double lam = std::clamp(a / (2 * b), 0.0, 1.0);
      best = std::min(best, g.rhs[i] - (lam * a - lam * lam * b));
    }
    return best;
  };
  auto member = [&](double xi) { return margin(xi) >= -opt.tol; };

  // The margin is concave in xi, so golden section finds a member if any.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = opt.lo, b = opt.hi;
  double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
  double f1 = margin(c1), f2 = margin(c2);
  double best_xi = 0.0, best = margin(0.0);
  if (!(0.0 >= opt.lo && 0.0 <= opt.hi)) best = -kInf;
  for (int it = 0; it < 160 && b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (f1 >= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - phi * (b - a);
      f1 = margin(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (b - a);
      f2 = margin(c2);
    }
    if (f1 > best) best = f1, best_xi = c1;
    if (f2 > best) best = f2, best_xi = c2;
  }
  for (double e : {opt.lo, opt.hi}) {
    double fe = margin(e);
    if (fe > best) best = fe, best_xi = e;
  }

  IntervalApprox out;
  out.resolution = opt.resolution;
  out.best_margin = best;
  if (best < -opt.tol) {
    out.note = "empty: best margin " + fmt_double(best);
    return out;
  }
  auto edge = [&](double inside, double bound, double sentinel) -> std::pair<double, double> {
    if (member(bound)) {
      if (std::abs(bound) >= tol::kSentinel || member(sentinel)) {
        double inf = sentinel > 0 ? kInf : -kInf;
        return {inf, inf};
      }
      throw Error(ErrorCode::BracketTooSmall, "members at bracket end " + fmt_double(bound));
    }
    double in = inside, outp = bound;
    for (int it = 0; it < 200 && std::abs(outp - in) > opt.resolution; ++it) {
      double mid = 0.5 * (in + outp);
      if (member(mid)) in = mid;
      else outp = mid;
    }
    return {in, outp};
  };
  auto [hi_in, hi_out] = edge(best_xi, opt.hi, tol::kSentinel);
  auto [lo_in, lo_out] = edge(best_xi, opt.lo, -tol::kSentinel);
  out.inner = RealSet1D::interval(lo_in, hi_in, true, true);
  out.outer = RealSet1D::interval(lo_out, hi_out, false, false);
  if (out.inner.is_empty()) out.inner = RealSet1D::point(best_xi);
  return out;
}

RealSet1D strong_set_1d(const FnModel& h, double xbar, const SubdiffSpec& spec, const IntervalOptions& opt) {
  IntervalApprox a = strong_interval_1d(h, xbar, spec, opt);
  if (a.inner.is_empty()) return a.inner;
  bool zero = strong_member(h, vec1(xbar), spec, vec1(0.0), opt.grid, opt.tol).member;
  double snap = 3.0 * std::sqrt(2.0 * std::max(1.0, spec.beta) * opt.tol) + 10.0 * opt.resolution;
  return a.snapped(zero, snap);
}

const char* to_string(SubdiffKind k) {
  switch (k) {
    case SubdiffKind::Regular: return "regular";
    case SubdiffKind::Limiting: return "limiting";
    case SubdiffKind::Horizon: return "horizon";
    case SubdiffKind::FenchelMoreau: return "fenchel_moreau";
    case SubdiffKind::GreenbergPierskalla: return "greenberg_pierskalla";
    case SubdiffKind::Quasiconvex: return "quasiconvex";
  }
  return "?";
}

SubdiffKind subdiff_kind_from_string(const std::string& s) {
  for (SubdiffKind k : {SubdiffKind::Regular, SubdiffKind::Limiting, SubdiffKind::Horizon, SubdiffKind::FenchelMoreau,
                        SubdiffKind::GreenbergPierskalla, SubdiffKind::Quasiconvex})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::InvalidParams, "unknown subdifferential kind '" + s + "'");
}

namespace {

RealSet1D regular_1d(const FnModel& h, double x, const LimitSchedule& s) {
  double up = dini_lower(h, vec1(x), vec1(1.0), s);
  double lo = -dini_lower(h, vec1(x), vec1(-1.0), s);
  if (up == -kInf || lo == kInf) return {};
  double slack = 1e-6 * std::max({1.0, std::isfinite(lo) ? std::abs(lo) : 0.0, std::isfinite(up) ? std::abs(up) : 0.0});
  if (lo > up + slack) return {};
  if (lo > up) return RealSet1D::point(0.5 * (lo + up));
  return RealSet1D::interval(lo, up, true, true);
}

double extrapolate_value(double a, double b, double c);

// Minorant slopes from one side: q(y) = (h(y) - h(x))/(y - x). Quotients that
// blow up toward x give an empty side; the far end is extrapolated so that
// slopes decaying like |y|^-p reach their limit.
double fm_side(const std::vector<std::pair<double, double>>& dq, double sign) {
  if (dq.empty()) return sign * kInf;
  double best = sign * kInf;
  for (const auto& [d, q] : dq) best = sign > 0 ? std::min(best, q) : std::max(best, q);
  const size_t n = dq.size(), near = std::min<size_t>(n, 10);
  std::vector<double> qs, ts;
  for (size_t i = near; i-- > 0;) {
    qs.push_back(dq[i].second);
    ts.push_back(dq[i].first);
  }
  double div = divergence(qs, ts);
  if (div == -sign * kInf) return -sign * kInf;
  if (n >= 3 && dq[n - 1].second == best) {
    double lim = extrapolate_value(dq[n - 3].second, dq[n - 2].second, dq[n - 1].second);
    best = sign > 0 ? std::min(best, lim) : std::max(best, lim);
  }
  return best;
}

RealSet1D fenchel_moreau_1d(const FnModel& h, double x, const YGridOptions& opt) {
  YGrid g = build_y_grid(h, vec1(x), SetOracle::whole(1), opt);
  std::vector<std::pair<double, double>> right, left;  // (distance, quotient)
  for (size_t i = 0; i < g.ys.size(); ++i) {
    double y = g.ys[i][0];
    double q = (h.eval1(y) - g.hx) / (y - x);
    (y > x ? right : left).emplace_back(std::abs(y - x), q);
  }
  std::sort(right.begin(), right.end());
  std::sort(left.begin(), left.end());
  double up = fm_side(right, 1.0), lo = fm_side(left, -1.0);
  if (lo > up || up == -kInf || lo == kInf) return {};
  return RealSet1D::interval(lo, up, std::isfinite(lo), std::isfinite(up));
}

struct SideProbe {
  bool all_in = true;
  bool any_in = false;
};

template <class Pred>
SideProbe probe_side(double x, double sign, const LimitSchedule& s, Pred in) {
  SideProbe p;
  for (int k = s.steps - s.tail; k < s.steps; ++k) {
    bool v = in(x + sign * s.step(k));
    p.all_in = p.all_in && v;
    p.any_in = p.any_in || v;
  }
  return p;
}

struct SideLimit {
  bool attentive = false;
  bool unbounded = false;
  double direction = 0.0;
  RealSet1D limit;
};

// Aitken-style extrapolation of interval endpoints along the halving
// schedule; falls back to the last set when the tail is not a single
// interval.
double extrapolate_value(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return c;
  double d1 = b - a, d2 = c - b;
  double lim = c;
  if (d1 != 0.0 && std::abs(d2) < std::abs(d1) && d1 * d2 > 0) {
    double rho = d2 / d1;
    lim = c + d2 * rho / (1 - rho);
  }
  return std::abs(lim) <= 1e-8 ? 0.0 : lim;
}

RealSet1D extrapolate(const std::vector<RealSet1D>& sets) {
  const size_t n = sets.size();
  if (n < 3) return sets.back();
  for (size_t i = n - 3; i < n; ++i)
    if (sets[i].parts().size() != 1) return sets.back();
  const Interval &a = sets[n - 3].parts()[0], &b = sets[n - 2].parts()[0], &c = sets[n - 1].parts()[0];
  double lo = extrapolate_value(a.lo, b.lo, c.lo), hi = extrapolate_value(a.hi, b.hi, c.hi);
  if (lo > hi) return sets.back();
  return RealSet1D::interval(lo, hi, c.lo_closed, c.hi_closed);
}

SideLimit side_limit(const FnModel& h, double x, double hx, double sign) {
  SideLimit out;
  const double attentive = 0.05 * std::max(1.0, std::abs(hx));
  const int steps = 11, tail = 4;
  std::vector<RealSet1D> sets;
  std::vector<double> ts;
  for (int k = 0; k < steps; ++k) {
    double t = 1e-3 * std::pow(0.5, k);
    double xk = x + sign * t;
    double v = h.eval1(xk);
    if (k >= steps - tail) {
      if (v == kInf || std::abs(v - hx) > attentive) return out;
      LimitSchedule inner{t * 1e-2, 0.5, 8, 3, 1.0};
      sets.push_back(regular_1d(h, xk, inner));
      ts.push_back(t);
    }
  }
  out.attentive = true;
  for (const RealSet1D& s : sets)
    if (s.is_empty()) return out;
  auto rep = [](const RealSet1D& s) { return s.nearest(0.0); };
  double r0 = rep(sets.front()), r1 = rep(sets.back());
  double p = 0.0;
  if (r0 != 0.0 && r1 != 0.0) p = std::log(std::abs(r1) / std::abs(r0)) / std::log(ts.front() / ts.back());
  if (std::abs(r1) > 100.0 && p >= 0.25) {
    out.unbounded = true;
    out.direction = r1 > 0 ? 1.0 : -1.0;
    return out;
  }
  out.limit = extrapolate(sets);
  return out;
}

}  // namespace

RealSet1D normal_operator_1d(const FnModel& h, double xbar, const YGridOptions& grid) {
  YGrid g = build_y_grid(h, vec1(xbar), SetOracle::whole(1), grid);
  bool right = false, left = false;
  for (size_t i = 0; i < g.ys.size(); ++i) {
    if (g.rhs[i] > 0) continue;
    if (g.ys[i][0] > xbar) right = true;
    else left = true;
  }
  if (right && left) return RealSet1D::point(0.0);
  if (right) return RealSet1D::interval(-kInf, 0, false, true);
  if (left) return RealSet1D::interval(0, kInf, true, false);
  return RealSet1D::all();
}

IntervalApprox classical_subdiff_1d(const FnModel& h, double xbar, SubdiffKind kind, const LimitSchedule& sched,
                                    const YGridOptions& grid) {
  if (h.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "classical_subdiff_1d needs dimension one");
  sched.validate();
  const double hx = h.eval1(xbar);
  if (hx == kInf) throw Error(ErrorCode::PointOutsideDomain, "h(xbar) = +inf");
  IntervalApprox out;
  out.resolution = sched.step(sched.steps - sched.tail);
  RealSet1D set;
  switch (kind) {
    case SubdiffKind::Regular:
      set = regular_1d(h, xbar, sched);
      out.note = "lower Dini quotients on the schedule tail";
      break;
    case SubdiffKind::FenchelMoreau:
      set = fenchel_moreau_1d(h, xbar, grid);
      out.note = "global minorant test on the y-grid";
      break;
    case SubdiffKind::GreenbergPierskalla: {
      YGrid g = build_y_grid(h, vec1(xbar), SetOracle::whole(1), grid);
      bool right = false, left = false;
      for (size_t i = 0; i < g.ys.size(); ++i) {
        if (h.eval(g.ys[i]) >= hx) continue;
        if (g.ys[i][0] > xbar) right = true;
        else left = true;
      }
      if (right && left) set = RealSet1D::empty();
      else if (right) set = RealSet1D::interval(-kInf, 0, false, false);
      else if (left) set = RealSet1D::interval(0, kInf, false, false);
      else set = RealSet1D::all();
      out.note = "implication test on the y-grid";
      break;
    }
    case SubdiffKind::Quasiconvex: {
      auto strict = [&](double y) { return h.eval1(y) < hx; };
      auto weak = [&](double y) { return h.eval1(y) <= hx; };
      SideProbe sr = probe_side(xbar, 1, sched, strict), sl = probe_side(xbar, -1, sched, strict);
      bool gate_zero = sr.all_in && sl.all_in;  // N(cl S^<, x) = {0}
      if (gate_zero) {
        set = RealSet1D::empty();
      } else {
        SideProbe wr = probe_side(xbar, 1, sched, weak), wl = probe_side(xbar, -1, sched, weak);
        RealSet1D n;
        if (wr.all_in && wl.all_in) n = RealSet1D::point(0.0);
        else if (wr.all_in) n = RealSet1D::interval(-kInf, 0, false, true);
        else if (wl.all_in) n = RealSet1D::interval(0, kInf, true, false);
        else n = RealSet1D::all();
        set = fenchel_moreau_1d(h, xbar, grid).intersect(n);
      }
      out.note = "Fenchel-Moreau intersected with the sublevel normal cone";
      break;
    }
    case SubdiffKind::Limiting:
    case SubdiffKind::Horizon: {
      RealSet1D reg = regular_1d(h, xbar, sched);
      SideLimit r = side_limit(h, xbar, hx, 1.0), l = side_limit(h, xbar, hx, -1.0);
      RealSet1D lim = reg;
      for (const SideLimit* s : {&r, &l})
        if (s->attentive && !s->unbounded) lim = lim.unite(s->limit);
      if (kind == SubdiffKind::Limiting) {
        set = lim;
      } else {
        bool any = !reg.is_empty() || (r.attentive && (r.unbounded || !r.limit.is_empty())) ||
                   (l.attentive && (l.unbounded || !l.limit.is_empty()));
        if (any) {
          set = RealSet1D::point(0.0).unite(lim.horizon());
          for (const SideLimit* s : {&r, &l}) {
            if (!s->unbounded) continue;
            set = set.unite(s->direction > 0 ? RealSet1D::interval(0, kInf, true, false)
                                             : RealSet1D::interval(-kInf, 0, false, true));
          }
        }
      }
      out.sampled = true;
      out.note = "sampled limits of regular subgradients along attentive sequences";
      break;
    }
  }
  out.inner = set;
  out.outer = set;
  return out;
}

RegularityReport f_regularity_check(const FnModel& h, double xbar, const SubdiffSpec& spec,
                                    const std::vector<double>& directions, DerivativeVariant variant,
                                    const LimitSchedule& sched) {
  RegularityReport rep;
  RealSet1D S = strong_set_1d(h, xbar, spec);
  rep.vacuous = S.is_empty();
  for (double d : directions) {
    if (d == 0.0) continue;
    if (!tangent_contains(spec.K, vec1(xbar), vec1(d))) continue;
    rep.directions.push_back(d);
    double der = variant == DerivativeVariant::Dini ? dini_upper(h, vec1(xbar), vec1(d), sched)
                                                    : hadamard_upper(h, vec1(xbar), vec1(d), sched);
    if (der < -1e-8 * (1.0 + std::abs(d))) continue;
    if (rep.vacuous) continue;
    double sup = S.support(d);
    if (sup < -1e-6 * std::abs(d)) {
      rep.regular = false;
      rep.counter_direction = d;
      rep.derivative = der;
      rep.support = sup;
      return rep;
    }
  }
  return rep;
}

}  // namespace sqo

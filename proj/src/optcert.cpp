#include "sqopt/optcert.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sqopt/convexsets.hpp"

namespace sqo {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::KKT: return "KKT";
    case Classification::FJ: return "FJ";
    case Classification::NotCertifiable: return "NotCertifiable";
  }
  return "?";
}

const char* to_string(PenaltyCase c) {
  switch (c) {
    case PenaltyCase::Bounded: return "case_i_bounded";
    case PenaltyCase::Horizon: return "case_ii_horizon";
    case PenaltyCase::NonStationaryEvidence: return "NonStationaryEvidence";
  }
  return "?";
}

namespace {

constexpr double kSelectionSlack = 1e-6;

// Points c_k in the closures of the terms whose sum is the point of the sum
// nearest to 0. Empty if some term is empty.
std::vector<double> select_terms(const std::vector<RealSet1D>& terms, double goal = 0.0) {
  for (const RealSet1D& t : terms)
    if (t.is_empty()) return {};
  std::vector<size_t> idx(terms.size(), 0), best;
  double best_d = kInf;
  long guard = 0;
  while (true) {
    double lo = 0, hi = 0;
    for (size_t k = 0; k < terms.size(); ++k) {
      lo += terms[k].parts()[idx[k]].lo;
      hi += terms[k].parts()[idx[k]].hi;
    }
    double d = lo > goal ? lo - goal : (hi < goal ? goal - hi : 0.0);
    if (d < best_d) best_d = d, best = idx;
    size_t k = 0;
    for (; k < terms.size(); ++k) {
      if (++idx[k] < terms[k].parts().size()) break;
      idx[k] = 0;
    }
    if (k == terms.size() || ++guard > 100000) break;
  }
  double lo = 0, hi = 0;
  std::vector<double> c(terms.size());
  for (size_t k = 0; k < terms.size(); ++k) {
    const Interval& p = terms[k].parts()[best[k]];
    lo += p.lo, hi += p.hi;
    c[k] = std::clamp(0.0, p.lo, p.hi);
  }
  double target = std::clamp(goal, lo, hi);
  double sum = 0;
  for (double v : c) sum += v;
  double delta = target - sum;
  for (size_t k = 0; k < terms.size() && delta != 0.0; ++k) {
    const Interval& p = terms[k].parts()[best[k]];
    double moved = std::clamp(c[k] + delta, p.lo, p.hi);
    delta -= moved - c[k];
    c[k] = moved;
  }
  return c;
}

bool is_lipschitz(const FnModel& f) { return f.ann().locally_lipschitz; }

// Compositions of n into parts summing to n.
void for_each_composition(int parts, int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> c(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      c[i] = left;
      fn(c);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, n);
}

Vec zeros(int n) { return Vec::Zero(n); }

}  // namespace

double fj_residual(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJCertificate& cert) {
  const int n = cs.dim();
  if (x.size() != n || f.dim() != n) throw Error(ErrorCode::DimensionMismatch, "certificate point");
  std::vector<int> act = active_set(cs, x);
  if (act != cert.active) throw Error(ErrorCode::UnvalidatedSubgradient, "certificate active set differs from I(x)");
  if (cert.mu.size() != act.size() || cert.subgradients.size() != act.size())
    throw Error(ErrorCode::UnvalidatedSubgradient, "one multiplier and one selection per active index");
  double total = cert.gamma0;
  if (cert.gamma0 < 0) throw Error(ErrorCode::UnvalidatedSubgradient, "gamma0 < 0");
  for (double m : cert.mu) {
    if (m < 0) throw Error(ErrorCode::UnvalidatedSubgradient, "negative multiplier");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::UnvalidatedSubgradient, "multipliers are not normalized");
  if (cert.gamma0_hat != (cert.gamma0 == 0.0 ? 1 : 0))
    throw Error(ErrorCode::UnvalidatedSubgradient, "gamma0_hat must indicate gamma0 = 0");
  if (cert.objective_vector.size() != n) throw Error(ErrorCode::UnvalidatedSubgradient, "objective vector missing");

  const Vec& v = cert.objective_vector;
  if (n == 1) {
    SubdiffKind kind = cert.gamma0 > 0 ? SubdiffKind::Limiting : SubdiffKind::Horizon;
    RealSet1D s = classical_subdiff_1d(f, x[0], kind).inner;
    if (!s.contains_approx(v[0], kSelectionSlack))
      throw Error(ErrorCode::UnvalidatedSubgradient,
                  "objective vector " + fmt_double(v[0]) + " not in " + std::string(to_string(kind)) + " set " + s.to_string());
  } else if (cert.gamma0 > 0) {
    if (!f.ann().gradient || (f.ann().gradient(x) - v).norm() > kSelectionSlack)
      throw Error(ErrorCode::UnvalidatedSubgradient, "objective vector must be the gradient");
  } else if (!is_lipschitz(f) || v.norm() != 0.0) {
    throw Error(ErrorCode::UnvalidatedSubgradient, "horizon selection not validated");
  }
  if (cert.gamma0 == 0.0 && cert.from_penalization && std::abs(v.norm() - 1.0) > 1e-9)
    throw Error(ErrorCode::UnvalidatedSubgradient, "penalization certificates need |v_inf| = 1");

  Vec sum = (cert.gamma0 > 0 ? cert.gamma0 : 1.0) * v;
  for (size_t k = 0; k < act.size(); ++k) {
    const int j = act[k];
    const Vec& s = cert.subgradients[k];
    if (s.size() != n) throw Error(ErrorCode::UnvalidatedSubgradient, "selection dimension");
    if (cert.mu[k] > 0) {
      MembershipVerdict mv = strong_member(cs.gs[j], x, cs.specs[j], s);
      if (!mv.member)
        throw Error(ErrorCode::UnvalidatedSubgradient, "selection for g_" + std::to_string(j + 1) +
                                                           " fails strong membership (margin " + fmt_double(mv.margin) + ")");
      sum += cert.mu[k] * s;
    } else {
      bool ok;
      if (n == 1) {
        ok = classical_subdiff_1d(cs.gs[j], x[0], SubdiffKind::Horizon).inner.contains_approx(s[0], kSelectionSlack);
      } else {
        ok = is_lipschitz(cs.gs[j]) && s.norm() == 0.0;
      }
      if (!ok) throw Error(ErrorCode::UnvalidatedSubgradient, "horizon selection for g_" + std::to_string(j + 1));
      sum += s;
    }
  }
  return sum.norm();
}

double fj_interval_residual(const FJSearchReport& d, double gamma0, const std::vector<double>& mu) {
  RealSet1D s = gamma0 > 0 ? d.objective_set.scale(gamma0) : d.objective_horizon;
  for (size_t k = 0; k < mu.size(); ++k) s = s.minkowski(mu[k] > 0 ? d.strong_sets[k].scale(mu[k]) : d.horizon_sets[k]);
  return s.distance(0.0);
}

namespace {

// Residual for nD using finite candidate sets of validated subgradients.
struct SampledData {
  Vec v;
  bool f_lipschitz = false;
  std::vector<std::vector<Vec>> candidates;
  std::vector<bool> horizon_zero;  // horizon set known to be {0}
};

double sampled_residual(const SampledData& d, double gamma0, const std::vector<double>& mu, std::vector<Vec>* pick) {
  const int n = static_cast<int>(d.v.size());
  Vec base = zeros(n);
  if (gamma0 > 0) base = gamma0 * d.v;
  else if (!d.f_lipschitz) return kInf;
  std::vector<int> pos;
  for (size_t k = 0; k < mu.size(); ++k) {
    if (mu[k] > 0) {
      if (d.candidates[k].empty()) return kInf;
      pos.push_back(static_cast<int>(k));
    } else if (!d.horizon_zero[k]) {
      return kInf;
    }
  }
  double best = kInf;
  std::vector<size_t> idx(pos.size(), 0), best_idx(pos.size(), 0);
  while (true) {
    Vec s = base;
    for (size_t q = 0; q < pos.size(); ++q) s += mu[pos[q]] * d.candidates[pos[q]][idx[q]];
    double r = s.norm();
    if (r < best) best = r, best_idx = idx;
    size_t q = 0;
    for (; q < pos.size(); ++q) {
      if (++idx[q] < d.candidates[pos[q]].size()) break;
      idx[q] = 0;
    }
    if (q == pos.size()) break;
  }
  if (pick) {
    pick->assign(mu.size(), zeros(n));
    for (size_t q = 0; q < pos.size(); ++q) (*pick)[pos[q]] = d.candidates[pos[q]][best_idx[q]];
  }
  return best;
}

}  // namespace

FJSearchReport fj_search(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJSearchOptions& opt) {
  FJSearchReport rep;
  const int n = cs.dim();
  if (f.dim() != n || x.size() != n) throw Error(ErrorCode::DimensionMismatch, "fj_search point");
  std::vector<int> act = active_set(cs, x);
  const int m = static_cast<int>(act.size());
  if (m > 4) throw Error(ErrorCode::InvalidParams, "at most four active constraints are supported");

  SampledData sd;
  std::function<double(double, const std::vector<double>&)> residual;
  if (n == 1) {
    rep.objective_set = classical_subdiff_1d(f, x[0], SubdiffKind::Limiting).inner;
    rep.objective_horizon = classical_subdiff_1d(f, x[0], SubdiffKind::Horizon).inner;
    for (const ActiveData& a : active_data_1d(cs, x[0])) {
      rep.strong_sets.push_back(a.strong);
      rep.horizon_sets.push_back(a.horizon);
    }
    residual = [&rep](double g0, const std::vector<double>& mu) { return fj_interval_residual(rep, g0, mu); };
  } else {
    if (!f.ann().gradient) throw Error(ErrorCode::InvalidParams, "sampled certificate search needs the gradient of f");
    sd.v = f.ann().gradient(x);
    sd.f_lipschitz = is_lipschitz(f);
    for (int j : act) {
      std::vector<Vec> cand;
      if (cs.gs[j].ann().gradient) {
        Vec g = cs.gs[j].ann().gradient(x);
        for (int e = -6; e <= 6; ++e) {
          Vec xi = std::ldexp(1.0, e) * g;
          if (strong_member(cs.gs[j], x, cs.specs[j], xi).member) cand.push_back(xi);
        }
      }
      sd.candidates.push_back(cand);
      sd.horizon_zero.push_back(is_lipschitz(cs.gs[j]));
    }
    residual = [&sd](double g0, const std::vector<double>& mu) { return sampled_residual(sd, g0, mu, nullptr); };
  }

  const int N = n == 1 ? opt.grid : std::min(opt.grid, 16);
  struct Point {
    double g0;
    std::vector<double> mu;
    double r;
  };
  Point best{1.0, std::vector<double>(m, 0.0), kInf};
  std::vector<Point> kkt, fj;
  for_each_composition(m + 1, N, [&](const std::vector<int>& c) {
    Point p{double(c[0]) / N, {}, 0.0};
    for (int k = 1; k <= m; ++k) p.mu.push_back(double(c[k]) / N);
    p.r = residual(p.g0, p.mu);
    ++rep.evaluated;
    if (p.r < best.r) best = p;
    if (p.r <= opt.tol) (p.g0 > 0 ? kkt : fj).push_back(p);
  });
  rep.coarse_residual = best.r;

  // Refinement stays inside the best coarse cell: zero coordinates stay zero
  // and positive ones keep at least half their coarse value, so a residual
  // that only vanishes as a multiplier tends to zero is not mistaken for one
  // attained in the pattern.
  if (best.r > opt.tol && std::isfinite(best.r)) {
    std::vector<double> c{best.g0};
    c.insert(c.end(), best.mu.begin(), best.mu.end());
    std::vector<double> lo(c.size()), hi(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
      lo[i] = c[i] > 0 ? c[i] / 2 : 0.0;
      hi[i] = c[i] > 0 ? c[i] + 1.0 / N : 0.0;
    }
    double h = 1.0 / (2.0 * N);
    auto eval = [&](const std::vector<double>& v) {
      std::vector<double> mu(v.begin() + 1, v.end());
      ++rep.evaluated;
      return residual(v[0], mu);
    };
    double r = best.r;
    for (int round = 0; round < opt.refine_rounds; ++round, h /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (size_t a = 0; a < c.size(); ++a)
          for (size_t b = 0; b < c.size(); ++b) {
            if (a == b || c[a] == 0.0 || c[b] == 0.0) continue;
            std::vector<double> t = c;
            double step = std::min({h, t[a] - lo[a], hi[b] - t[b]});
            if (step <= 0) continue;
            t[a] -= step;
            t[b] += step;
            double rt = eval(t);
            if (rt < r) r = rt, c = t, improved = true;
          }
      }
    }
    best.g0 = c[0];
    best.mu.assign(c.begin() + 1, c.end());
    best.r = r;
  }
  rep.min_residual = best.r;
  for (const auto* set : {&kkt, &fj})
    for (const Point& p : *set) rep.min_residual = std::min(rep.min_residual, p.r);

  // Certificate: centroid of the passing grid points, snapped to the nearest
  // passing point.
  Point chosen = best;
  Classification cls = Classification::NotCertifiable;
  for (auto [set, c] : {std::pair{&kkt, Classification::KKT}, std::pair{&fj, Classification::FJ}}) {
    if (set->empty()) continue;
    std::vector<double> mean(m + 1, 0.0);
    for (const Point& p : *set) {
      mean[0] += p.g0;
      for (int k = 0; k < m; ++k) mean[k + 1] += p.mu[k];
    }
    for (double& v : mean) v /= set->size();
    double bd = kInf;
    for (const Point& p : *set) {
      double d = (p.g0 - mean[0]) * (p.g0 - mean[0]);
      for (int k = 0; k < m; ++k) d += (p.mu[k] - mean[k + 1]) * (p.mu[k] - mean[k + 1]);
      if (d < bd) bd = d, chosen = p;
    }
    cls = c;
    break;
  }

  FJCertificate& cert = rep.best;
  cert.gamma0 = chosen.g0;
  cert.gamma0_hat = chosen.g0 == 0.0 ? 1 : 0;
  cert.active = act;
  cert.mu = chosen.mu;
  cert.residual = chosen.r;
  cert.classification = cls;
  if (n == 1) {
    std::vector<RealSet1D> terms{chosen.g0 > 0 ? rep.objective_set.scale(chosen.g0) : rep.objective_horizon};
    for (int k = 0; k < m; ++k)
      terms.push_back(chosen.mu[k] > 0 ? rep.strong_sets[k].scale(chosen.mu[k]) : rep.horizon_sets[k]);
    std::vector<double> c = select_terms(terms);
    if (c.empty()) {
      cert.objective_vector = vec1(std::nan(""));
      cert.subgradients.assign(m, vec1(std::nan("")));
      cert.note = "a term of the sum is empty";
    } else {
      cert.objective_vector = vec1(chosen.g0 > 0 ? c[0] / chosen.g0 : c[0]);
      for (int k = 0; k < m; ++k) cert.subgradients.push_back(vec1(chosen.mu[k] > 0 ? c[k + 1] / chosen.mu[k] : c[k + 1]));
    }
  } else {
    std::vector<Vec> pick;
    sampled_residual(sd, chosen.g0, chosen.mu, &pick);
    cert.objective_vector = chosen.g0 > 0 ? sd.v : zeros(n);
    cert.subgradients = pick.empty() ? std::vector<Vec>(m, zeros(n)) : pick;
  }
  return rep;
}

GCQReport gcq_check(const ConstraintSystem& cs, const Vec& x) {
  if (cs.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "gcq_check is exact in dimension one");
  GCQReport rep;
  ConeDescription c = assemble_cone(active_data_1d(cs, x[0]), true, false);
  rep.assembled = c.raw_union;
  rep.patterns = c.patterns;
  rep.normal_cone = omega_normal_cone_1d(cs, x[0]);
  rep.holds = rep.assembled == rep.normal_cone;
  if (!rep.holds) {
    for (double v : {1.0, -1.0, 0.0, 0.5, -0.5})
      if (rep.normal_cone.contains(v) != rep.assembled.contains(v)) {
        rep.witness = v;
        break;
      }
  }
  return rep;
}

ClosureReport closure_conditions(const ConstraintSystem& cs, const Vec& x) {
  if (cs.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "closure conditions are exact in dimension one");
  ClosureReport rep;
  RealSet1D N = omega_normal_cone_1d(cs, x[0]);
  rep.pointed = N.intersect(N.scale(-1.0)) == RealSet1D::point(0.0);
  rep.zero_excluded = true;
  rep.horizon_trivial = true;
  for (const ActiveData& a : active_data_1d(cs, x[0])) {
    rep.zero_excluded = rep.zero_excluded && !a.strong.contains(0.0);
    RealSet1D hz = horizon_set_1d(a.strong).intersect(a.normal);
    rep.horizon_trivial = rep.horizon_trivial && (hz.is_empty() || hz == RealSet1D::point(0.0));
  }
  rep.holds = rep.pointed && rep.zero_excluded && rep.horizon_trivial;
  return rep;
}

NNAMCReport nnamc_check(const FnModel& f, const ConstraintSystem& cs, const Vec& x) {
  NNAMCReport rep;
  const int n = cs.dim();
  std::vector<int> act = active_set(cs, x);
  const int m = static_cast<int>(act.size());
  if (n != 1) {
    // Sampled: Lipschitz data give zero horizon terms, and an abnormal
    // combination needs 0 in the convex hull of validated strong directions.
    if (!is_lipschitz(f)) {
      rep.holds = false;
      rep.pattern = "horizon set of f not available";
      return rep;
    }
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<Vec> dirs;
      bool all = true;
      for (int k = 0; k < m; ++k) {
        if (!(mask & (1 << k))) continue;
        const FnModel& g = cs.gs[act[k]];
        if (!g.ann().gradient) return rep;
        Vec gr = g.ann().gradient(x);
        if (gr.norm() == 0.0 || !strong_member(g, x, cs.specs[act[k]], gr).member) {
          all = false;
          break;
        }
        dirs.push_back(gr / gr.norm());
      }
      if (all && min_norm_in_hull(dirs).norm() <= 1e-9) {
        rep.holds = false;
        rep.pattern = "strong directions of mask " + std::to_string(mask);
        return rep;
      }
    }
    return rep;
  }

  RealSet1D W = classical_subdiff_1d(f, x[0], SubdiffKind::Horizon).inner;
  std::vector<ActiveData> data = active_data_1d(cs, x[0]);
  const RealSet1D nonzero = RealSet1D::interval(-kInf, 0.0, false, false).unite(RealSet1D::interval(0.0, kInf, false, false));
  // With I+ nonempty any solution is abnormal; otherwise one term is pinned
  // to a nonzero value and the rest must cancel it.
  auto label = [&](int plus, int pinned) {
    std::string s;
    for (int k = 0; k < m; ++k)
      s += std::string(s.empty() ? "" : ", ") + "g_" + std::to_string(act[k] + 1) + ((plus & (1 << k)) ? " in I+" : " in I0");
    if (pinned == 0) s += std::string(s.empty() ? "" : ", ") + "w != 0";
    else if (pinned > 0) s += ", v_" + std::to_string(act[pinned - 1] + 1) + "^inf != 0";
    return s;
  };
  for (int plus = 0; plus < (1 << m); ++plus) {
    std::vector<RealSet1D> terms{W};
    for (int k = 0; k < m; ++k) terms.push_back((plus & (1 << k)) ? data[k].strong.positive_hull() : data[k].horizon);
    if (plus != 0) {
      RealSet1D sum = RealSet1D::point(0.0);
      for (const RealSet1D& t : terms) sum = sum.minkowski(t);
      if (!sum.contains(0.0)) continue;
      std::vector<double> c = select_terms(terms);
      rep.holds = false;
      rep.pattern = label(plus, -1);
      rep.w = c[0];
      rep.terms.assign(c.begin() + 1, c.end());
      return rep;
    }
    for (int pinned = 0; pinned <= m; ++pinned) {
      RealSet1D nz = terms[pinned].intersect(nonzero);
      if (nz.is_empty()) continue;
      std::vector<RealSet1D> rest;
      for (int k = 0; k <= m; ++k)
        if (k != pinned) rest.push_back(terms[k]);
      std::vector<double> tries{1.0, -1.0, nz.nearest(1.0), nz.nearest(-1.0)};
      for (double p : tries) {
        if (!nz.contains(p)) continue;
        std::vector<double> c = rest.empty() ? std::vector<double>{} : select_terms(rest, -p);
        if (!rest.empty() && c.empty()) continue;
        double s = p;
        for (double v : c) s += v;
        bool inside = std::abs(s) <= 1e-12;
        for (size_t k = 0; k < c.size() && inside; ++k) inside = rest[k].contains(c[k]);
        if (!inside) continue;
        c.insert(c.begin() + pinned, p);
        rep.holds = false;
        rep.pattern = label(plus, pinned);
        rep.w = c[0];
        rep.terms.assign(c.begin() + 1, c.end());
        return rep;
      }
    }
  }
  return rep;
}

namespace {

std::vector<Vec> omega_samples(const ConstraintSystem& cs, const Vec& x, double radius, int samples) {
  std::vector<Vec> ys;
  if (cs.dim() == 1) {
    for (int i = 0; i < samples; ++i) {
      double y = x[0] - radius + 2 * radius * i / (samples - 1);
      if (cs.omega.contains1(y)) ys.push_back(vec1(y));
    }
    if (cs.omega.line()) {
      for (const Interval& p : cs.omega.line()->parts())
        for (double e : {p.lo, p.hi})
          if (std::isfinite(e) && std::abs(e - x[0]) <= radius && cs.omega.contains1(e)) ys.push_back(vec1(e));
    }
    return ys;
  }
  SetOracle region = cs.omega.intersect(SetOracle::ball(x, radius));
  try {
    ys = sample_region(region, samples, 11);
  } catch (const Error&) {
  }
  ys.push_back(x);
  return ys;
}

}  // namespace

GrowthReport sufficiency_growth(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJCertificate& cert,
                                double radius, int samples) {
  GrowthReport rep;
  rep.radius = radius;
  double r;
  try {
    r = fj_residual(f, cs, x, cert);
  } catch (const Error& e) {
    throw Error(ErrorCode::CertificateNotValidated, e.what());
  }
  if (r > tol::kResidual) throw Error(ErrorCode::CertificateNotValidated, "residual " + fmt_double(r));

  for (size_t k = 0; k < cert.active.size(); ++k) {
    if (cert.mu[k] <= 0) continue;
    const SubdiffSpec& s = cs.specs[cert.active[k]];
    rep.mu_bar += 0.5 * s.beta * s.gamma * cert.mu[k];
  }

  std::vector<Vec> ys = omega_samples(cs, x, radius, samples);
  bool inside_k = true;
  for (int j : cert.active) {
    const FnModel& g = cs.gs[j];
    bool sq = g.ann().sq_modulus && *g.ann().sq_modulus >= cs.specs[j].gamma;
    rep.hypotheses.push_back({"g_" + std::to_string(j + 1) + " strongly quasiconvex with modulus gamma_j", sq,
                              sq ? "annotated modulus " + fmt_double(*g.ann().sq_modulus) : "no annotation"});
    for (const Vec& y : ys) inside_k = inside_k && cs.specs[j].K.contains(y);
    if (cs.dim() == 1) {
      std::vector<Vec> probe;
      for (int i = -40; i <= 40; ++i) probe.push_back(vec1(x[0] + i / 40.0));
      IscReport isc = sublevel_isc_probe(g, x, SetOracle::ball(x, 1.0), probe);
      rep.hypotheses.push_back({"S_g_" + std::to_string(j + 1) + " inner semicontinuous", !isc.violation, ""});
    }
  }
  rep.hypotheses.push_back({"Omega inside every K_j near x", inside_k, ""});

  const Vec& v = cert.objective_vector;
  const double fx = f.eval(x);
  const double alpha = f.ann().pseudoconvex_alpha.value_or(0.0);
  rep.kkt_form_checked = cert.gamma0 > 0;
  rep.pseudoconvex_checked = f.ann().locally_lipschitz && f.ann().pseudoconvex_alpha.has_value();
  for (const Vec& y : ys) {
    Vec d = y - x;
    double rhs = (cert.gamma0 > 0 ? cert.gamma0 : double(cert.gamma0_hat)) * v.dot(d);
    double gap = rhs - rep.mu_bar * d.squaredNorm();
    if (gap < rep.worst_gap) rep.worst_gap = gap, rep.worst_y = y;
    if (rep.kkt_form_checked) rep.worst_gap_kkt = std::min(rep.worst_gap_kkt, v.dot(d) - rep.mu_bar / cert.gamma0 * d.squaredNorm());
    if (rep.pseudoconvex_checked)
      rep.worst_gap_pseudoconvex = std::min(rep.worst_gap_pseudoconvex, f.eval(y) - fx - alpha * d.squaredNorm());
  }
  rep.samples = static_cast<long>(ys.size());
  const double t = tol::kMember;
  rep.verified = rep.worst_gap >= -t && (!rep.kkt_form_checked || rep.worst_gap_kkt >= -t) &&
                 (!rep.pseudoconvex_checked || rep.worst_gap_pseudoconvex >= -t);
  return rep;
}

std::vector<double> default_penalty_schedule() { return {1, 2, 5, 10, 20, 50, 100, 1e3, 1e4, 1e5, 1e6}; }

double distance_to_set(const SetOracle& omega, const Vec& x, Vec* proj) {
  if (omega.line()) {
    double p = omega.line()->nearest(x[0]);
    if (std::isnan(p)) throw Error(ErrorCode::InvalidRegion, "empty feasible set");
    if (proj) *proj = vec1(p);
    return std::abs(x[0] - p);
  }
  if (!omega.polyhedral()) throw Error(ErrorCode::InvalidParams, "distance needs an interval or polyhedral description");
  // Dykstra's alternating projections onto the halfspaces.
  const auto& hs = omega.halfspaces();
  Vec z = x;
  std::vector<Vec> inc(hs.size(), Vec::Zero(x.size()));
  for (int it = 0; it < 5000; ++it) {
    Vec before = z;
    for (size_t i = 0; i < hs.size(); ++i) {
      Vec w = z + inc[i];
      double s = hs[i].a.dot(w) - hs[i].b;
      Vec pz = s > 0 ? Vec(w - s / hs[i].a.squaredNorm() * hs[i].a) : w;
      inc[i] = w - pz;
      z = pz;
    }
    if ((z - before).norm() <= 1e-15 * (1 + z.norm())) break;
  }
  if (proj) *proj = z;
  return (x - z).norm();
}

PenaltyReport penalize_certify(const FnModel& f, const SetOracle& omega, const Vec& x, double delta, std::vector<double> ks,
                               int grid) {
  const int n = f.dim();
  if (n > 2) throw Error(ErrorCode::InvalidParams, "penalization is limited to dimension two");
  if (omega.dim() != n || x.size() != n) throw Error(ErrorCode::DimensionMismatch, "penalization data");
  if (!(delta > 0)) throw Error(ErrorCode::InvalidParams, "delta must be positive");
  if (ks.empty()) ks = default_penalty_schedule();
  PenaltyReport rep;
  rep.delta = delta;
  const double rad = delta / 2;

  for (double k : ks) {
    auto phi = [&](const Vec& z) {
      if ((z - x).norm() > rad * (1 + 1e-15)) return kInf;
      double fz = f.eval(z);
      if (fz == kInf) return kInf;
      double d = distance_to_set(omega, z);
      return fz + k * d * d + 0.5 * (z - x).squaredNorm();
    };
    Vec best;
    double bv = kInf;
    if (n == 1) {
      rep.grid_step = 2 * rad / (grid - 1);
      int bi = -1;
      for (int i = 0; i < grid; ++i) {
        double v = phi(vec1(x[0] - rad + i * rep.grid_step));
        if (v < bv) bv = v, bi = i;
      }
      if (bi < 0) throw Error(ErrorCode::NoGridMinimizer, "no finite value on the ball grid");
      // Golden section inside the neighbouring cells.
      double a = std::max(x[0] - rad, x[0] - rad + (bi - 1) * rep.grid_step);
      double b = std::min(x[0] + rad, x[0] - rad + (bi + 1) * rep.grid_step);
      const double g = (std::sqrt(5.0) - 1) / 2;
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = phi(vec1(c)), fd = phi(vec1(d));
      for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::abs(a)); ++it) {
        if (fc <= fd) b = d, d = c, fd = fc, c = b - g * (b - a), fc = phi(vec1(c));
        else a = c, c = d, fc = fd, d = a + g * (b - a), fd = phi(vec1(d));
      }
      best = vec1(x[0] - rad + bi * rep.grid_step);
      for (double t : {c, d, 0.5 * (a + b)})
        if (double v = phi(vec1(t)); v < bv) bv = v, best = vec1(t);
    } else {
      int side = std::max(3, static_cast<int>(std::sqrt(double(grid))));
      rep.grid_step = 2 * rad / (side - 1);
      for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
          Vec z(2);
          z << x[0] - rad + i * rep.grid_step, x[1] - rad + j * rep.grid_step;
          double v = phi(z);
          if (v < bv) bv = v, best = z;
        }
      if (!std::isfinite(bv)) throw Error(ErrorCode::NoGridMinimizer, "no finite value on the ball grid");
      for (double h = rep.grid_step; h > 1e-14; h /= 2) {
        bool moved = true;
        while (moved) {
          moved = false;
          for (int dir = 0; dir < 8; ++dir) {
            Vec z = best;
            double ang = dir * M_PI / 4;
            z[0] += h * std::cos(ang);
            z[1] += h * std::sin(ang);
            double v = phi(z);
            if (v < bv) bv = v, best = z, moved = true;
          }
        }
      }
    }
    PenaltyStep st;
    st.k = k;
    st.y = best;
    st.value = bv;
    Vec proj;
    distance_to_set(omega, best, &proj);
    st.normal = 2 * k * (best - proj);
    st.v = -st.normal - (best - x);
    rep.steps.push_back(st);
  }

  const PenaltyStep& last = rep.steps.back();
  auto normal_distance = [&](const Vec& w) {
    if (omega.line()) return normal_cone_1d(*omega.line(), x[0]).distance(w[0]);
    return cone_distance(w, normal_generators(omega, x));
  };
  double drift = (last.y - x).norm();
  if (drift > std::max(10 * rep.grid_step, 1e-3)) {
    rep.limit = PenaltyCase::NonStationaryEvidence;
    rep.v = last.v;
    rep.residual = normal_distance(-last.v);
    return rep;
  }
  double vmax = 0;
  for (const PenaltyStep& s : rep.steps) vmax = std::max(vmax, s.v.norm());
  const double growth = rep.steps.size() > 1 ? last.v.norm() / std::max(1e-300, rep.steps[rep.steps.size() / 2].v.norm()) : 1.0;
  if (last.v.norm() > 1e3 && growth > 10) {
    rep.limit = PenaltyCase::Horizon;
    rep.v = last.v / last.v.norm();
  } else {
    rep.limit = PenaltyCase::Bounded;
    rep.v = last.v;
  }
  rep.residual = normal_distance(-rep.v);
  return rep;
}

QFPSufficiencyReport qfp_sufficiency(const QFPInstance& inst, double level, const FnModel& f, const Vec& x,
                                     std::optional<double> gamma0, double radius, int samples, std::uint64_t seed) {
  QFPSufficiencyReport rep;
  const int n = inst.dim();
  if (x.size() != n || f.dim() != n) throw Error(ErrorCode::DimensionMismatch, "qfp point");
  if (inst.B.norm() != 0.0) throw Error(ErrorCode::PreconditionFailed, "denominator must be affine (B = 0)");
  rep.gamma = inst.lambda_min();
  if (!(rep.gamma > 0)) throw Error(ErrorCode::PreconditionFailed, "numerator must be strongly convex");
  auto g1 = [&](const Vec& y) { return inst.numerator(y); };
  auto g2 = [&](const Vec& y) { return inst.denominator(y); };
  const double scale = std::max(1.0, std::abs(g1(x)));
  if (std::abs(g1(x) - level * g2(x)) > 1e-9 * scale)
    throw Error(ErrorCode::ActiveLevelMismatch, "g1(x) = " + fmt_double(g1(x)) + ", level * g2(x) = " + fmt_double(level * g2(x)));
  if (!(g2(x) > 0)) throw Error(ErrorCode::PreconditionFailed, "denominator must be positive at x");
  if (gamma0 && !(*gamma0 >= 0 && *gamma0 < 1)) throw Error(ErrorCode::PreconditionFailed, "need gamma0 in [0,1) so that mu > 0");
  if (!f.ann().gradient) throw Error(ErrorCode::PreconditionFailed, "objective gradient required");

  // Fenchel-Moreau subgradient of g = g1 - level g2 at x, checked as a global
  // affine minorant on a sample around x.
  Vec xi = inst.A * x + inst.a - level * inst.b;
  rep.fm_subgradient = xi;
  auto g = [&](const Vec& y) { return g1(y) - level * g2(y); };
  Vec lo = x.array() - 2 * radius, hi = x.array() + 2 * radius;
  rep.fm_validated = true;
  for (const Vec& y : sample_region(SetOracle::box(lo, hi), 512, seed))
    rep.fm_validated = rep.fm_validated && g(y) >= g(x) + xi.dot(y - x) - 1e-9 * (1 + std::abs(g(y)));

  const Vec v = f.ann().gradient(x);
  const bool lip = f.ann().locally_lipschitz;
  auto resid = [&](double g0) {
    double mu = 1 - g0;
    if (g0 > 0) return (g0 * v + mu * xi).norm();
    return lip ? (mu * xi).norm() : kInf;
  };
  double g0 = 0.0;
  if (gamma0) {
    g0 = *gamma0;
  } else {
    double br = kInf;
    for (int i = 0; i < 64; ++i)
      if (double r = resid(i / 64.0); r < br) br = r, g0 = i / 64.0;
    double h = 1.0 / 128;
    for (int round = 0; round < 40; ++round, h /= 2)
      for (double c : {g0 - h, g0 + h})
        if (c >= 0 && c < 1)
          if (double r = resid(c); r < br) br = r, g0 = c;
  }
  FJCertificate& cert = rep.cert;
  cert.gamma0 = g0;
  cert.gamma0_hat = g0 == 0.0 ? 1 : 0;
  cert.mu = {1 - g0};
  cert.active = {0};
  cert.subgradients = {xi};
  cert.objective_vector = g0 > 0 ? v : Vec(Vec::Zero(n));
  cert.residual = resid(g0);
  rep.certified = rep.fm_validated && cert.residual <= tol::kResidual;
  cert.classification = rep.certified ? (g0 > 0 ? Classification::KKT : Classification::FJ) : Classification::NotCertifiable;

  GrowthReport& gr = rep.growth;
  gr.radius = radius;
  gr.mu_bar = 0.5 * rep.gamma * cert.mu[0];
  if (!rep.certified) return rep;
  std::vector<Vec> ys;
  SetOracle omega = SetOracle::predicate(n, [&](const Vec& y) { return g(y) <= 0; }, true, Box{lo, hi});
  SetOracle region = omega.intersect(SetOracle::ball(x, radius));
  try {
    ys = sample_region(region, samples, seed);
  } catch (const Error&) {
  }
  ys.push_back(x);
  const double alpha = f.ann().pseudoconvex_alpha.value_or(0.0);
  gr.pseudoconvex_checked = lip && f.ann().pseudoconvex_alpha.has_value();
  gr.kkt_form_checked = g0 > 0;
  const double fx = f.eval(x);
  for (const Vec& y : ys) {
    Vec d = y - x;
    double gap = (g0 > 0 ? g0 : 1.0) * cert.objective_vector.dot(d) - gr.mu_bar * d.squaredNorm();
    if (gap < gr.worst_gap) gr.worst_gap = gap, gr.worst_y = y;
    if (gr.kkt_form_checked) gr.worst_gap_kkt = std::min(gr.worst_gap_kkt, v.dot(d) - gr.mu_bar / g0 * d.squaredNorm());
    if (gr.pseudoconvex_checked) gr.worst_gap_pseudoconvex = std::min(gr.worst_gap_pseudoconvex, f.eval(y) - fx - alpha * d.squaredNorm());
  }
  gr.samples = static_cast<long>(ys.size());
  const double t = 1e-9;
  gr.verified = gr.worst_gap >= -t && (!gr.kkt_form_checked || gr.worst_gap_kkt >= -t) &&
                (!gr.pseudoconvex_checked || gr.worst_gap_pseudoconvex >= -t);
  return rep;
}

}  // namespace sqo

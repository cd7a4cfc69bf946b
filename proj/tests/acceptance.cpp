// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sqopt/corpus.hpp"
#include "sqopt/optcert.hpp"
#include "sqopt/problem.hpp"

using namespace sqo;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

void report(int id, const Verdict& v, double seconds) {
  for (const std::string& n : v.notes) std::printf("    %s\n", n.c_str());
  std::printf("criterion %d: %s (%.2fs)\n", id, v.pass ? "PASS" : "FAIL", seconds);
  std::fflush(stdout);
}

SubdiffSpec spec(double beta, double gamma, const RealSet1D& K) { return make_spec(beta, gamma, K); }

std::string str(const RealSet1D& s) { return s.to_string(); }

// ---------------------------------------------------------------- criterion 1

Verdict exact_sets() {
  Verdict v;
  struct Item {
    const char* label;
    const char* fn;
    double beta, gamma;
    const char* K;
    const char* expected;
  };
  const Item items[] = {
      {"jump_linear K=[-1,1]", "jump_linear", 1, 1, "[-1,1]", "[1/4,2]"},
      {"jump_linear K=[-1,0]", "jump_linear", 1, 1, "[-1,0]", "[1/2,inf)"},
      {"recip_on_unit K=R", "recip_on_unit", 1, 1, "R", "(-inf,-1/2]"},
      {"recip_off_unit K=R", "recip_off_unit", 1, 1, "R", "{}"},
      {"sqrt_abs beta=1/2", "sqrt_abs", 0.5, 0.5, "[-1,1]", "[-1,1]"},
      {"sqrt_abs beta=1", "sqrt_abs", 1, 0.5, "[-1,1]", "[-3/2,3/2]"},
      {"sqrt_abs beta=2", "sqrt_abs", 2, 0.5, "[-1,1]", "[-5/2,5/2]"},
      {"hinge_left K=[-1,0]", "hinge_left", 1, 1, "[-1,0]", "[-1,inf)"},
      {"hinge_left K=[0,1]", "hinge_left", 1, 1, "[0,1]", "(-inf,-1/2]"},
  };
  for (const Item& it : items) {
    auto t0 = Clock::now();
    RealSet1D got = strong_set_1d(catalog(it.fn), 0.0, spec(it.beta, it.gamma, RealSet1D::parse(it.K)));
    double s = since(t0);
    bool ok = got.approx_equal(RealSet1D::parse(it.expected), 1e-3) && s < 5.0;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: expected %s, computed %s, %.3fs", it.label, it.expected, str(got).c_str(), s);
    v.require(ok, buf);
  }
  return v;
}

// ---------------------------------------------------------------- criterion 2

ConstraintSystem system_of(std::vector<ConstraintDecl> d, const char* omega) { return build_system(d, omega, 1); }

Verdict certificates() {
  Verdict v;
  auto t0 = Clock::now();
  ConstraintSystem recip = system_of({{"recip_on_unit", {}, 1, 1, "R"}}, "[0,1]");
  FJSearchReport kkt = fj_search(catalog("linear"), recip, vec1(0));
  v.require(kkt.best.classification == Classification::KKT,
            std::string("minimise x over {g <= 0}: ") + to_string(kkt.best.classification));
  FJSearchReport kkt2 = fj_search(catalog("linear", parse_params("c=2")), recip, vec1(0));
  v.require(kkt2.best.classification == Classification::KKT,
            std::string("minimise 2x over {g <= 0}: ") + to_string(kkt2.best.classification));
  FJSearchReport bad = fj_search(catalog("neg_square"), recip, vec1(0));
  v.require(bad.best.classification == Classification::NotCertifiable,
            std::string("minimise -x^2 over {g <= 0}: ") + to_string(bad.best.classification));
  v.require(bad.min_residual >= 0.1, "smallest residual over the simplex grid " + fmt_double(bad.min_residual) +
                                         " (bound 0.1)");
  ConstraintSystem jump = system_of({{"jump_linear", {}, 1, 1, "[-1,1]"}}, "[-1,0]");
  v.require(gcq_check(jump, vec1(0)).holds, "gcq holds for the jump-linear constraint");
  ConstraintSystem two = system_of({{"recip_on_unit", {}, 1, 1, "R"}, {"recip_off_unit", {}, 1, 1, "R"}}, "{0}");
  GCQReport g2 = gcq_check(two, vec1(0));
  v.require(!g2.holds, "gcq fails for the two reciprocal constraints (union " + str(g2.assembled) + ", N = " +
                           str(g2.normal_cone) + ")");
  double s = since(t0);
  v.require(s < 10.0, "runtime " + fmt_double(s) + "s");
  return v;
}

// ---------------------------------------------------------------- criterion 3

struct PoolFn {
  const char* id;
  const char* params;
  double x;
};

const std::vector<PoolFn>& pool() {
  static const std::vector<PoolFn> p{
      {"half_square", "", 0.0},  {"half_square", "", 0.5},   {"abs", "", 0.0},          {"sqrt_abs", "", 0.0},
      {"frac_abs", "", 0.3},     {"jump_linear", "", 0.0},   {"hinge_left", "", 0.0},   {"recip_on_unit", "", 0.0},
      {"half_sq_left", "", 0.0}, {"half_sq_right", "", 0.0}, {"square", "shift=1", 0.2}, {"cbrt", "", 0.5},
      {"neg_square", "", 0.3},   {"linear", "", 0.0},
  };
  return p;
}

struct Draw {
  FnModel h;
  double x;
  double beta, gamma;
  RealSet1D K;
  std::string label;
};

RealSet1D around(std::mt19937_64& rng, double x) {
  std::uniform_real_distribution<double> w(0.2, 2.0), u(0, 1);
  if (u(rng) < 0.2) return RealSet1D::all();
  return RealSet1D::closed(x - w(rng), x + w(rng));
}

Draw draw(std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, pool().size() - 1);
  std::uniform_real_distribution<double> b(0.25, 3.0), g(0.0, 2.0);
  const PoolFn& p = pool()[pick(rng)];
  Draw d{catalog(p.id, parse_params(p.params)), p.x, b(rng), g(rng), around(rng, p.x), ""};
  d.label = std::string(p.id) + " at " + fmt_double(p.x) + " beta=" + fmt_double(d.beta) + " gamma=" +
            fmt_double(d.gamma) + " K=" + str(d.K);
  return d;
}

/// Uniform point of S clipped to [-5,5], kept 1e-3 away from finite endpoints.
std::optional<double> inner_point(const RealSet1D& S, std::mt19937_64& rng) {
  std::vector<std::pair<double, double>> spans;
  for (const Interval& p : S.parts()) {
    double lo = std::max(p.lo, -5.0) + 1e-3, hi = std::min(p.hi, 5.0) - 1e-3;
    if (lo <= hi) spans.push_back({lo, hi});
  }
  if (spans.empty()) return std::nullopt;
  std::uniform_int_distribution<size_t> pick(0, spans.size() - 1);
  auto [lo, hi] = spans[pick(rng)];
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Suite {
  std::string name;
  int trials = 0;
  int violations = 0;
  std::string first;

  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
};

constexpr int kTrials = 200;
constexpr int kAttempts = 4000;

Suite midpoint_convexity(std::mt19937_64& rng) {
  Suite s{"P1 midpoint convexity"};
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    Draw d = draw(rng);
    SubdiffSpec sp = spec(d.beta, d.gamma, d.K);
    RealSet1D S = strong_interval_1d(d.h, d.x, sp).inner;
    auto p = inner_point(S, rng), q = inner_point(S, rng);
    if (!p || !q) continue;
    ++s.trials;
    double mid = 0.5 * (*p + *q);
    if (!strong_member(d.h, vec1(d.x), sp, vec1(mid)).member) s.fail(d.label + " xi=" + fmt_double(mid));
  }
  return s;
}

Suite anti_monotone(std::mt19937_64& rng) {
  Suite s{"P6 anti-monotonicity in K"};
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    Draw d = draw(rng);
    RealSet1D S = strong_interval_1d(d.h, d.x, spec(d.beta, d.gamma, d.K)).inner;
    auto xi = inner_point(S, rng);
    if (!xi) continue;
    double lo = std::max(d.K.inf(), d.x - 3.0), hi = std::min(d.K.sup(), d.x + 3.0);
    RealSet1D small = RealSet1D::closed(d.x - u(rng) * (d.x - lo), d.x + u(rng) * (hi - d.x));
    ++s.trials;
    if (!strong_member(d.h, vec1(d.x), spec(d.beta, d.gamma, small), vec1(*xi)).member)
      s.fail(d.label + " K'=" + str(small) + " xi=" + fmt_double(*xi));
  }
  return s;
}

Suite ss_reduction(std::mt19937_64& rng) {
  Suite s{"SS-reduction equivalence"};
  std::uniform_real_distribution<double> u(-3, 3);
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    Draw d = draw(rng);
    SubdiffSpec sp;
    sp.beta = d.beta;
    sp.gamma = d.gamma;
    sp.K = sublevel_set(d.h, vec1(d.x), false);
    double xi = u(rng);
    ++s.trials;
    bool strong = strong_member(d.h, vec1(d.x), sp, vec1(xi)).member;
    bool ss = ss_member(d.h, vec1(d.x), d.beta, d.gamma, vec1(xi)).member;
    if (strong != ss) s.fail(d.label + " xi=" + fmt_double(xi));
  }
  return s;
}

Suite gp_inclusion(std::mt19937_64& rng) {
  Suite s{"GP inclusion"};
  const std::vector<double> ys = oracle::dense(-4, 4, 0, 4001);
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    Draw d = draw(rng);
    if (d.gamma <= 0) continue;
    RealSet1D S = strong_interval_1d(d.h, d.x, spec(d.beta, d.gamma, RealSet1D::all())).inner;
    auto xi = inner_point(S, rng);
    if (!xi) continue;
    ++s.trials;
    const double hx = d.h.eval1(d.x);
    for (double y0 : ys) {
      double y = d.x + y0;
      if (*xi * (y - d.x) >= 0 && d.h.eval1(y) < hx - 1e-12) {
        s.fail(d.label + " xi=" + fmt_double(*xi) + " y=" + fmt_double(y));
        break;
      }
    }
  }
  return s;
}

Suite interior_dichotomy(std::mt19937_64& rng) {
  Suite s{"emptiness/{0} dichotomy on [h<=0]"};
  struct Neg {
    const char* id;
    const char* params;
    double lo, hi;      // x drawn here, h(x) < 0
    const char* level;  // [h <= 0]
  };
  const Neg fns[] = {{"constant", "c=-1", -2, 2, "R"},
                     {"square", "shift=1", -0.9, 0.9, "[-1,1]"},
                     {"frac_abs", "", -3, -0.1, "(-inf,0]"},
                     {"cbrt", "", -2, -0.1, "(-inf,0]"},
                     {"linear", "", -2, -0.1, "(-inf,0]"}};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> u(0, 1), b(0.25, 3.0), g(0.05, 2.0);
  for (; s.trials < kTrials; ++s.trials) {
    const Neg& n = fns[pick(rng)];
    double x = n.lo + (n.hi - n.lo) * u(rng);
    double beta = b(rng), gamma = s.trials % 2 ? g(rng) : 0.0;
    RealSet1D S = strong_interval_1d(catalog(n.id, parse_params(n.params)), x, spec(beta, gamma, RealSet1D::parse(n.level))).inner;
    bool ok = gamma > 0 ? S.is_empty() : S.approx_equal(RealSet1D::point(0), 1e-3);
    if (!ok)
      s.fail(std::string(n.id) + " at " + fmt_double(x) + " beta=" + fmt_double(beta) + " gamma=" + fmt_double(gamma) +
             ": " + str(S));
  }
  return s;
}

struct ZeroFn {
  const char* id;
  const char* omega;  // {g <= 0}
};

const std::vector<ZeroFn>& zero_pool() {
  static const std::vector<ZeroFn> p{{"jump_linear", "[-1,0]"},     {"recip_on_unit", "[0,1]"},
                                     {"hinge_left", "[0,inf)"},     {"half_sq_left", "[0,inf)"},
                                     {"half_sq_right", "(-inf,0]"}, {"zero", "R"},
                                     {"abs", "{0}"},                {"half_square", "{0}"}};
  return p;
}

Suite max_rule_forward(std::mt19937_64& rng) {
  Suite s{"forward max-rule inclusion"};
  std::uniform_int_distribution<size_t> pick(0, zero_pool().size() - 1);
  std::uniform_real_distribution<double> b(0.25, 3.0), g(0.0, 2.0);
  for (; s.trials < kTrials; ++s.trials) {
    std::vector<FnModel> gs{catalog(zero_pool()[pick(rng)].id), catalog(zero_pool()[pick(rng)].id)};
    double beta = b(rng);
    std::vector<SubdiffSpec> specs{spec(beta, g(rng), around(rng, 0)), spec(beta, g(rng), around(rng, 0))};
    RealSet1D K = specs[0].K.line()->intersect(*specs[1].K.line());
    MaxRuleReport r = max_rule_check(gs, 0.0, specs, beta, K);
    std::string label = gs[0].name() + "," + gs[1].name() + " K=" + str(K);
    bool ok = r.forward_holds;
    FnModel m = pointwise_max(gs);
    for (int i = 0; i < 5 && ok; ++i)
      if (auto w = inner_point(r.union_side, rng))
        ok = strong_member(m, vec1(0), spec(beta, r.gamma_m, K), vec1(*w)).member;
    if (!ok) s.fail(label);
  }
  return s;
}

RealSet1D hull_with(const RealSet1D& omega, double a, double b) {
  double lo = std::min(omega.inf(), a), hi = std::max(omega.sup(), b);
  return RealSet1D::interval(lo, hi, std::isfinite(lo), std::isfinite(hi));
}

Suite lower_estimate_polar(std::mt19937_64& rng) {
  Suite s{"normal-cone lower estimate in the polar"};
  std::uniform_int_distribution<size_t> pick(0, zero_pool().size() - 1);
  std::uniform_int_distribution<int> count(1, 2);
  std::uniform_real_distribution<double> b(0.25, 3.0), g(0.0, 2.0), w(0.2, 2.0), u(0, 1);
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    std::vector<ConstraintDecl> decls;
    RealSet1D omega = RealSet1D::all();
    if (u(rng) < 0.1) {
      decls = {{"recip_on_unit", {}, b(rng), g(rng), "R"}, {"recip_off_unit", {}, b(rng), g(rng), "R"}};
      omega = RealSet1D::point(0);
    } else {
      int n = count(rng);
      for (int j = 0; j < n; ++j) {
        const ZeroFn& z = zero_pool()[pick(rng)];
        decls.push_back({z.id, {}, b(rng), g(rng), "R"});
        omega = omega.intersect(RealSet1D::parse(z.omega));
      }
      for (ConstraintDecl& d : decls)
        if (u(rng) < 0.7) d.K = str(hull_with(omega, -w(rng), w(rng)));
    }
    ConstraintSystem cs = build_system(decls, str(omega), 1);
    RealSet1D low = normal_cone_lower(cs, vec1(0)).set;
    ++s.trials;
    std::vector<double> ys = oracle::dense(-3, 3, 0, 2001);
    for (int i = 0; i < 5; ++i) {
      auto v = inner_point(low, rng);
      if (!v) break;
      bool in = true;
      for (double y : ys)
        if (omega.contains(y) && *v * y > 1e-9) in = false;
      if (!in) {
        s.fail("Omega=" + str(omega) + " lower=" + str(low) + " v=" + fmt_double(*v));
        break;
      }
    }
  }
  return s;
}

Suite derivative_bound(std::mt19937_64& rng) {
  Suite s{"support bounded by beta max{g^H+,0}"};
  for (int a = 0; a < kAttempts && s.trials < kTrials; ++a) {
    Draw d = draw(rng);
    RealSet1D S = strong_interval_1d(d.h, d.x, spec(d.beta, d.gamma, d.K)).inner;
    auto w = inner_point(S, rng);
    if (!w) continue;
    ++s.trials;
    for (double dir : {-1.0, 1.0}) {
      double gh = hadamard_upper(d.h, vec1(d.x), vec1(dir));
      double bound = d.beta * std::max(gh, 0.0);
      if (*w * dir > bound + 1e-4) {
        s.fail(d.label + " w=" + fmt_double(*w) + " d=" + fmt_double(dir) + " g^H+=" + fmt_double(gh));
        break;
      }
    }
  }
  return s;
}

Verdict property_suites() {
  Verdict v;
  std::mt19937_64 rng(20240611);
  using Fn = Suite (*)(std::mt19937_64&);
  const Fn suites[] = {midpoint_convexity, anti_monotone,    ss_reduction,         gp_inclusion,
                       interior_dichotomy, max_rule_forward, lower_estimate_polar, derivative_bound};
  for (Fn f : suites) {
    auto t0 = Clock::now();
    Suite s = f(rng);
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s: %d trials, %d violations (%.1fs)%s%s", s.name.c_str(), s.trials, s.violations,
                  since(t0), s.violations ? "; first: " : "", s.first.c_str());
    v.require(s.trials >= kTrials && s.violations == 0, buf);
  }
  return v;
}

// ---------------------------------------------------------------- criterion 4

Verdict lambda_grid() {
  Verdict v;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1), b(0.5, 2.0), g(0.0, 2.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    double xi = u(rng), d = u(rng), beta = b(rng), gamma = g(rng);
    LambdaWorst w = worst_lambda_margin(xi, d, beta, gamma);
    double a = xi * d / beta + gamma * d * d / 2, c = (1 / beta + gamma) * d * d / 2;
    worst = std::max(worst, std::abs(w.sup_phi - oracle::grid_max(a, c, 100001).second));
  }
  v.require(worst <= 1e-10, "1000 draws, largest gap to the 1e5-point grid " + fmt_double(worst));
  return v;
}

// ---------------------------------------------------------------- criterion 5

Verdict penalization() {
  Verdict v;
  SetOracle omega = parse_set("[0,1]", 1);
  PenaltyReport lin = penalize_certify(catalog("linear"), omega, vec1(0));
  bool close = true;
  for (const PenaltyStep& s : lin.steps) close = close && std::abs(s.y[0]) <= 2 / s.k + lin.grid_step + 1e-12;
  v.require(close, "f = x: |y_k| <= 2/k + grid step on " + std::to_string(lin.steps.size()) + " steps");
  v.require(lin.limit == PenaltyCase::Bounded, std::string("f = x: limit ") + to_string(lin.limit));
  v.require(lin.residual <= 1e-6, "f = x: residual " + fmt_double(lin.residual));
  PenaltyReport neg = penalize_certify(catalog("neg_square"), omega, vec1(0));
  v.require(neg.limit == PenaltyCase::NonStationaryEvidence, std::string("f = -x^2: ") + to_string(neg.limit));
  return v;
}

// ---------------------------------------------------------------- criterion 6

Verdict qfp_pipeline() {
  Verdict v;
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1, 1), pos(0.2, 1.5);
  std::uniform_int_distribution<int> dims(1, 3);
  int verified = 0, refuted = 0, certified = 0, grown = 0;
  std::vector<std::string> misses;
  for (int t = 0; t < 20; ++t) {
    const int n = dims(rng);
    QFPInstance q;
    Mat R(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) R(i, j) = u(rng);
    q.A = R * R.transpose() + pos(rng) * Mat::Identity(n, n);
    q.a = Vec(n);
    q.b = Vec(n);
    for (int i = 0; i < n; ++i) q.a[i] = u(rng), q.b[i] = 0.5 * u(rng);
    q.alpha = u(rng);
    q.B = Mat::Zero(n, n);
    q.beta = 2.0;
    q.m = 1.0;
    q.M = 3.0;
    const double gamma = q.modulus();
    FnModel h = qfp_build(q);
    SetOracle region = qfp_region(q).with_bounds(Box{Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)});
    SamplingPlan plan;
    plan.seed = 100 + t;
    if (sq_check(h, region, gamma, plan).verdict == SQVerdict::Verified) ++verified;
    else misses.push_back("instance " + std::to_string(t) + " refuted at its modulus");
    if (sq_check(h, region, 1.5 * gamma + 0.1, plan).verdict == SQVerdict::Refuted) ++refuted;
    else std::printf("    note: instance %d (dim %d) not refuted at 1.5*gamma + 0.1\n", t, n);

    // Boundary point of the level set, objective chosen so the multiplier rule holds with gamma0 = 2/3.
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = 0.5 * u(rng);
    double level = q.numerator(x) / q.denominator(x);
    Vec xi = q.A * x + q.a - level * q.b;
    const double g0 = 2.0 / 3, mu = 1 - g0;
    Vec c = -(mu / g0) * xi;
    std::string cs;
    for (int i = 0; i < n; ++i) cs += (i ? "," : "") + fmt_double(c[i]);
    FnModel f = catalog("linear", parse_params("c=" + cs), n);
    QFPSufficiencyReport r = qfp_sufficiency(q, level, f, x, g0, 0.5, 1024, 200 + t);
    if (r.certified) {
      ++certified;
      bool ok = r.growth.verified && std::abs(r.growth.mu_bar - 0.5 * r.gamma * mu) < 1e-12;
      if (ok) ++grown;
      else misses.push_back("instance " + std::to_string(t) + " growth gap " + fmt_double(r.growth.worst_gap));
    }
  }
  for (const std::string& m : misses) std::printf("    note: %s\n", m.c_str());
  v.require(verified == 20, "verified at the modulus on " + std::to_string(verified) + "/20");
  v.require(refuted >= 15, "refuted at 1.5*modulus + 0.1 on " + std::to_string(refuted) + "/20");
  v.require(certified > 0 && grown == certified,
            "growth with mu_bar = gamma*mu/2 on " + std::to_string(grown) + "/" + std::to_string(certified) +
                " certified instances");
  return v;
}

// ---------------------------------------------------------------- criterion 7

Verdict corpus_run() {
  Verdict v;
  auto t0 = Clock::now();
  int passed = 0, total = 0;
  for (const CorpusCase& c : corpus_cases()) {
    CaseResult r = run_case(c);
    ++total;
    if (r.pass) ++passed;
    std::string failed;
    for (const QuantityResult& q : r.quantities)
      if (!q.pass) failed += " " + q.label + "(expected " + q.expected + ", computed " + q.computed + ")";
    v.notes.push_back(std::string(r.pass ? "ok   " : "FAIL ") + c.id + failed);
  }
  double s = since(t0);
  v.require(passed == total, std::to_string(passed) + "/" + std::to_string(total) + " cases");
  v.require(s < 60.0, "runtime " + fmt_double(s) + "s");
  return v;
}

}  // namespace

int main() {
  using Fn = Verdict (*)();
  const Fn criteria[] = {exact_sets, certificates, property_suites, lambda_grid, penalization, qfp_pipeline, corpus_run};
  bool all = true;
  for (int i = 0; i < 7; ++i) {
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    report(i + 1, v, since(t0));
    all = all && v.pass;
  }
  return all ? 0 : 1;
}

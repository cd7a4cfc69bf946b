#include "sqopt/funcspace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sqopt/gencvx.hpp"

namespace sqo {

FnModel::FnModel(std::string name, int dim, std::function<double(const Vec&)> f, SetOracle domain,
                 FnAnnotations ann)
    : name_(std::move(name)), dim_(dim), f_(std::move(f)), domain_(std::move(domain)), ann_(std::move(ann)) {
  if (domain_.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "domain of " + name_);
}

double FnModel::eval(const Vec& x) const {
  if (x.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                name_ + " expects dimension " + std::to_string(dim_) + ", got " + std::to_string(x.size()));
  if (!domain_.contains(x)) return kInf;
  double v = f_(x);
  if (std::isnan(v)) throw Error(ErrorCode::InvariantViolation, name_ + " returned NaN");
  if (v == -kInf) throw Error(ErrorCode::InvariantViolation, name_ + " returned -inf");
  return v;
}

double FnModel::eval1(double x) const { return eval(vec1(x)); }

double eval_extended(const FnModel& f, const Vec& x) { return f.eval(x); }

void LimitSchedule::validate() const {
  if (!(t0 > 0) || !(shrink > 0 && shrink < 1) || steps < 1 || tail < 1 || tail > steps || jitter < 0)
    throw Error(ErrorCode::NonPositiveStep, "limit schedule needs t0>0, 0<shrink<1, 1<=tail<=steps");
}

double LimitSchedule::step(int k) const { return t0 * std::pow(shrink, k); }

namespace {

// Difference quotient using the step actually represented in floating point.
double quotient(const FnModel& f, const Vec& x, double fx, const Vec& d, double t) {
  Vec y = x + t * d;
  double dd = d.squaredNorm();
  double teff = dd > 0 ? (y - x).dot(d) / dd : t;
  if (teff <= 0) teff = t;
  double fy = f.eval(y);
  if (fy == kInf) return kInf;
  return (fy - fx) / teff;
}

}  // namespace

double divergence(const std::vector<double>& qs, const std::vector<double>& ts) {
  if (qs.size() < 2) return 0.0;
  const double first = qs.front(), last = qs.back();
  if (!std::isfinite(last)) return std::isinf(last) && last > 0 && std::isinf(first) ? kInf : 0.0;
  for (size_t i = 0; i < qs.size(); ++i) {
    if (!std::isfinite(qs[i]) || qs[i] == 0.0 || (qs[i] > 0) != (last > 0)) return 0.0;
    if (i > 0 && std::abs(qs[i]) < std::abs(qs[i - 1])) return 0.0;
  }
  double p = std::log(std::abs(last) / std::abs(first)) / std::log(ts.front() / ts.back());
  if (std::abs(last) > 100.0 && p >= 0.25) return last > 0 ? kInf : -kInf;
  return 0.0;
}

namespace {

template <class Pick>
double dini_tail(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s, double init, Pick pick) {
  s.validate();
  if (d.size() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "direction");
  double fx = f.eval(x);
  if (fx == kInf) throw Error(ErrorCode::PointOutsideDomain, "directional derivative at a point outside dom");
  std::vector<double> qs, ts;
  for (int k = s.steps - s.tail; k < s.steps; ++k) {
    qs.push_back(quotient(f, x, fx, d, s.step(k)));
    ts.push_back(s.step(k));
  }
  if (double inf = divergence(qs, ts); inf != 0.0) return inf;
  double acc = init;
  for (double q : qs) acc = pick(acc, q);
  return acc;
}

}  // namespace

double dini_upper(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s) {
  return dini_tail(f, x, d, s, -kInf, [](double a, double b) { return std::max(a, b); });
}

double dini_lower(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s) {
  return dini_tail(f, x, d, s, kInf, [](double a, double b) { return std::min(a, b); });
}

double hadamard_upper(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s) {
  s.validate();
  if (d.size() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "direction");
  double fx = f.eval(x);
  if (fx == kInf) throw Error(ErrorCode::PointOutsideDomain, "directional derivative at a point outside dom");
  const int n = f.dim();
  std::vector<Vec> shifts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    shifts.push_back(e);
    shifts.push_back(-e);
  }
  double acc = -kInf;
  std::vector<double> qs, ts;
  for (int k = s.steps - s.tail; k < s.steps; ++k) {
    double t = s.step(k);
    double qk = -kInf;
    for (const Vec& u : shifts) {
      Vec dj = d + (s.jitter * t) * u;
      Vec y = x + t * dj;
      double fy = f.eval(y);
      qk = std::max(qk, fy == kInf ? kInf : (fy - fx) / t);
    }
    qs.push_back(qk);
    ts.push_back(t);
    acc = std::max(acc, qk);
  }
  if (double inf = divergence(qs, ts); inf > 0) return inf;
  return acc;
}

SetOracle sublevel_set(const FnModel& f, const Vec& x, bool strict) {
  double fx = f.eval(x);
  if (fx == kInf) throw Error(ErrorCode::PointOutsideDomain, "sublevel set at a point outside dom");
  FnModel g = f;
  auto member = strict ? std::function<bool(const Vec&)>([g, fx](const Vec& y) { return g.eval(y) < fx; })
                       : std::function<bool(const Vec&)>([g, fx](const Vec& y) { return g.eval(y) <= fx; });
  SetOracle s = SetOracle::predicate(f.dim(), member, f.ann().quasiconvex, f.domain().bounds());
  s.label = std::string(strict ? "strict " : "") + "sublevel of " + f.name();
  return s;
}

RealSet1D reconstruct_line(const SetOracle& s, double lo, double hi, int n, const std::vector<double>& extra) {
  if (s.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "reconstruct_line needs dimension one");
  if (!(lo < hi) || n < 2) throw Error(ErrorCode::InvalidParams, "reconstruct_line window");
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
  for (double e : extra)
    if (e >= lo && e <= hi) xs.push_back(e);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<char> in(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) in[i] = s.contains1(xs[i]);
  auto refine = [&](double member, double other) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (member + other);
      if (mid == member || mid == other) break;
      if (s.contains1(mid)) member = mid;
      else other = mid;
    }
    return member;
  };
  std::vector<Interval> parts;
  size_t i = 0;
  while (i < xs.size()) {
    if (!in[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < xs.size() && in[j + 1]) ++j;
    double a = i > 0 ? refine(xs[i], xs[i - 1]) : xs[i];
    double b = j + 1 < xs.size() ? refine(xs[j], xs[j + 1]) : xs[j];
    parts.push_back({a, b, true, true});
    i = j + 1;
  }
  return RealSet1D::from_parts(std::move(parts));
}

IscReport sublevel_isc_probe(const FnModel& f, const Vec& xbar, const SetOracle& V,
                             const std::vector<Vec>& probe_grid, const LimitSchedule& s) {
  s.validate();
  double fx = f.eval(xbar);
  if (fx == kInf) throw Error(ErrorCode::PointOutsideDomain, "isc probe at a point outside dom");
  IscReport rep;
  std::vector<Vec> pts;
  std::vector<double> vals;
  for (const Vec& p : probe_grid) {
    if (!V.contains(p)) continue;
    double v = f.eval(p);
    if (v == kInf) continue;
    pts.push_back(p);
    vals.push_back(v);
  }
  if (pts.size() < 2) return rep;
  // Median nearest-neighbour distance; isolated points of the domain must not
  // inflate it.
  std::vector<double> nns;
  for (size_t i = 0; i < pts.size(); ++i) {
    double nn = kInf;
    for (size_t j = 0; j < pts.size(); ++j)
      if (i != j) nn = std::min(nn, (pts[i] - pts[j]).norm());
    nns.push_back(nn);
  }
  std::nth_element(nns.begin(), nns.begin() + nns.size() / 2, nns.end());
  const double spacing = nns[nns.size() / 2];
  const double threshold = std::max(5.0 * spacing, 1e-9);
  const double attentive = 1e-3 * std::max(1.0, std::abs(fx));

  std::vector<Vec> seq;
  const int n = f.dim();
  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      for (int k = s.steps - s.tail; k < s.steps; ++k) {
        Vec xk = xbar;
        xk[i] += sign * s.step(k);
        double v = f.eval(xk);
        if (v == kInf || std::abs(v - fx) > attentive) continue;
        seq.push_back(xk);
      }
    }
  }
  rep.probes = static_cast<int>(seq.size());
  for (size_t a = 0; a < pts.size(); ++a) {
    if (vals[a] > fx) continue;
    // The gap must persist along every attentive probe, not just one.
    double worst = kInf;
    Vec worst_x;
    for (const Vec& xk : seq) {
      double level = f.eval(xk);
      double gap = kInf;
      for (size_t b = 0; b < pts.size(); ++b)
        if (vals[b] <= level) gap = std::min(gap, (pts[a] - pts[b]).norm());
      if (gap < worst) {
        worst = gap;
        worst_x = xk;
      }
    }
    if (!seq.empty() && worst >= threshold && worst > rep.gap) {
      rep.violation = true;
      rep.y = pts[a];
      rep.x_k = worst_x;
      rep.gap = worst;
    }
  }
  return rep;
}

Params parse_params(const std::string& text) {
  Params out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip();
    if (i >= text.size()) break;
    size_t eq = text.find('=', i);
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value near '" + text.substr(i) + "'");
    std::string key = text.substr(i, eq - i);
    if (key.empty() || key.find_first_of(" \t") != std::string::npos)
      throw Error(ErrorCode::ParseError, "bad key '" + key + "'");
    i = eq + 1;
    std::string val;
    if (i < text.size() && text[i] == '"') {
      size_t close = text.find('"', i + 1);
      if (close == std::string::npos) throw Error(ErrorCode::ParseError, "unterminated quote for " + key);
      val = text.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      size_t end = i;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      val = text.substr(i, end - i);
      i = end;
    }
    if (!out.emplace(key, val).second) throw Error(ErrorCode::ParseError, "duplicate key " + key);
  }
  return out;
}

namespace {

double to_double(const std::string& raw, const std::string& what) {
  std::string t;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto one = [&](const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    const char* b = s.c_str();
    if (*b == '+') ++b;
    double v = 0;
    auto res = std::from_chars(b, s.c_str() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.c_str() + s.size())
      throw Error(ErrorCode::InvalidParams, "bad number '" + raw + "' for " + what);
    return v;
  };
  size_t slash = t.find('/');
  if (slash == std::string::npos) return one(t);
  double den = one(t.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::InvalidParams, "zero denominator for " + what);
  return one(t.substr(0, slash)) / den;
}

}  // namespace

double param_double(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  return to_double(it->second, key);
}

Vec parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(to_double(item, "vector entry"));
  Vec out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

Mat parse_matrix(const std::string& text) {
  std::vector<Vec> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_vector(row));
  if (rows.empty()) throw Error(ErrorCode::InvalidParams, "empty matrix");
  Mat m(static_cast<int>(rows.size()), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw Error(ErrorCode::InvalidParams, "ragged matrix");
    m.row(static_cast<int>(i)) = rows[i].transpose();
  }
  return m;
}

namespace {

using Fn1 = std::function<double(double)>;

FnModel line_fn(const std::string& name, Fn1 g, const RealSet1D& dom, FnAnnotations ann) {
  return FnModel(name, 1, [g](const Vec& x) { return g(x[0]); }, SetOracle::from_line(dom), std::move(ann));
}

void check_keys(const Params& p, const std::vector<std::string>& allowed, const std::string& id) {
  for (const auto& [k, v] : p) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw Error(ErrorCode::InvalidParams, "unknown parameter '" + k + "' for " + id);
  }
}

void need_line(int dim, const std::string& id) {
  if (dim != 1) throw Error(ErrorCode::DimensionMismatch, id + " is defined on the real line only");
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"zero", "identically 0 on R^n", {}},
      {"constant", "c on R^n", {"c"}},
      {"linear", "<c,x> on R^n (c defaults to all ones)", {"c"}},
      {"square", "scale*|x|^2 - shift on R^n", {"scale", "shift"}},
      {"half_square", "|x|^2/2 on R^n", {}},
      {"neg_square", "-x^2", {}},
      {"abs", "|x| (Euclidean norm on R^n)", {}},
      {"sqrt_abs", "sqrt(|x|)", {}},
      {"frac_abs", "x/(1+|x|)", {}},
      {"cbrt", "cube root of x", {}},
      {"neg_cbrt", "minus the cube root of x", {}},
      {"recip_on_unit", "0 at 0, -1/x on (0,1], +inf elsewhere", {}},
      {"recip_off_unit", "0 at 0, +inf on (0,1], -1/x elsewhere", {}},
      {"half_sq_left", "0 for x>=0, x^2/2 for x<0", {}},
      {"half_sq_right", "x^2/2 for x>=0, 0 for x<0", {}},
      {"hinge_left", "0 for x>=0, -x for x<0", {}},
      {"jump_linear", "2x for x>0, 0 at 0, -x-1 for x<0", {}},
      {"isc_breaker", "-|x| on [-1,1], 0 at 2, +inf elsewhere", {}},
      {"qfp", "(x'Ax/2 + a'x + alpha)/(x'Bx/2 + b'x + beta) on {m <= denominator <= M}",
       {"A", "a", "alpha", "B", "b", "beta", "m", "M"}},
  };
  return entries;
}

FnModel catalog(const std::string& id, const Params& params, int dim) {
  const auto& entries = catalog_entries();
  if (std::none_of(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.id == id; }))
    throw Error(ErrorCode::UnknownCatalogId, "unknown catalog id '" + id + "'");
  if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  const RealSet1D R = RealSet1D::all();
  FnAnnotations ann;
  if (id == "zero" || id == "constant") {
    check_keys(params, id == "zero" ? std::vector<std::string>{} : std::vector<std::string>{"c"}, id);
    double c = param_double(params, "c", 0.0);
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.sq_modulus = 0.0;
    ann.pseudoconvex_alpha = 0.0;
    ann.gradient = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
    return FnModel(id, dim, [c](const Vec&) { return c; }, SetOracle::whole(dim), ann);
  }
  if (id == "linear") {
    check_keys(params, {"c"}, id);
    Vec c = Vec::Ones(dim);
    if (auto it = params.find("c"); it != params.end()) c = parse_vector(it->second);
    if (c.size() != dim) throw Error(ErrorCode::DimensionMismatch, "linear: c has wrong length");
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.pseudoconvex_alpha = 0.0;
    ann.gradient = [c](const Vec&) { return c; };
    return FnModel(id, dim, [c](const Vec& x) { return c.dot(x); }, SetOracle::whole(dim), ann);
  }
  if (id == "square" || id == "half_square") {
    check_keys(params, id == "square" ? std::vector<std::string>{"scale", "shift"} : std::vector<std::string>{}, id);
    double scale = id == "half_square" ? 0.5 : param_double(params, "scale", 1.0);
    double shift = param_double(params, "shift", 0.0);
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = true;
    ann.quasiconvex = scale >= 0;
    if (scale > 0) {
      ann.strong_convexity = 2 * scale;
      ann.sq_modulus = 2 * scale;
      ann.sq_region = SetOracle::whole(dim);
      ann.pseudoconvex_alpha = scale;
    }
    ann.gradient = [scale](const Vec& x) { return Vec(2 * scale * x); };
    return FnModel(id, dim, [scale, shift](const Vec& x) { return scale * x.squaredNorm() - shift; },
                   SetOracle::whole(dim), ann);
  }
  if (id == "abs") {
    check_keys(params, {}, id);
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.breakpoints = {0.0};
    ann.pseudoconvex_alpha = 0.0;
    return FnModel(id, dim, [](const Vec& x) { return x.norm(); }, SetOracle::whole(dim), ann);
  }

  if (id == "qfp") {
    check_keys(params, catalog_entries().back().params, id);
    return qfp_build(qfp_from_params(params));
  }

  need_line(dim, id);
  check_keys(params, {}, id);
  if (id == "neg_square") {
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = true;
    ann.gradient = [](const Vec& x) { return Vec(-2 * x); };
    return line_fn(id, [](double x) { return -x * x; }, R, ann);
  }
  if (id == "sqrt_abs") {
    ann.lsc = ann.usc = ann.continuous = ann.quasiconvex = true;
    ann.breakpoints = {0.0};
    return line_fn(id, [](double x) { return std::sqrt(std::abs(x)); }, R, ann);
  }
  if (id == "frac_abs") {
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.gradient = [](const Vec& x) {
      double d = 1 + std::abs(x[0]);
      return vec1(1 / (d * d));
    };
    return line_fn(id, [](double x) { return x / (1 + std::abs(x)); }, R, ann);
  }
  if (id == "cbrt" || id == "neg_cbrt") {
    double s = id == "cbrt" ? 1.0 : -1.0;
    ann.lsc = ann.usc = ann.continuous = ann.quasiconvex = true;
    ann.breakpoints = {0.0};
    return line_fn(id, [s](double x) { return s * std::cbrt(x); }, R, ann);
  }
  if (id == "recip_on_unit") {
    ann.lsc = true;
    ann.quasiconvex = true;
    ann.sq_modulus = 1.0;
    ann.sq_region = SetOracle::from_line(RealSet1D::closed(0, 1));
    ann.breakpoints = {0.0, 1.0};
    return line_fn(id, [](double x) { return x == 0 ? 0.0 : -1.0 / x; }, RealSet1D::closed(0, 1), ann);
  }
  if (id == "recip_off_unit") {
    ann.lsc = true;
    ann.breakpoints = {0.0, 1.0};
    auto dom = RealSet1D::interval(-kInf, 0, false, true).unite(RealSet1D::interval(1, kInf, false, false));
    return line_fn(id, [](double x) { return x == 0 ? 0.0 : -1.0 / x; }, dom, ann);
  }
  if (id == "half_sq_left" || id == "half_sq_right") {
    bool left = id == "half_sq_left";
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.breakpoints = {0.0};
    ann.gradient = [left](const Vec& x) { return vec1((left ? x[0] < 0 : x[0] > 0) ? x[0] : 0.0); };
    return line_fn(id, [left](double x) { return (left ? x < 0 : x >= 0) ? 0.5 * x * x : 0.0; }, R, ann);
  }
  if (id == "hinge_left") {
    ann.lsc = ann.usc = ann.continuous = ann.locally_lipschitz = ann.quasiconvex = true;
    ann.breakpoints = {0.0};
    return line_fn(id, [](double x) { return x >= 0 ? 0.0 : -x; }, R, ann);
  }
  if (id == "jump_linear") {
    ann.usc = true;
    ann.breakpoints = {0.0, -1.0};
    return line_fn(id, [](double x) { return x > 0 ? 2 * x : (x == 0 ? 0.0 : -x - 1); }, R, ann);
  }
  if (id == "isc_breaker") {
    ann.breakpoints = {-1.0, 0.0, 1.0, 2.0};
    auto dom = RealSet1D::closed(-1, 1).unite(RealSet1D::point(2));
    return line_fn(id, [](double x) { return x == 2 ? 0.0 : -std::abs(x); }, dom, ann);
  }
  throw Error(ErrorCode::UnknownCatalogId, "unknown catalog id '" + id + "'");
}

}  // namespace sqo

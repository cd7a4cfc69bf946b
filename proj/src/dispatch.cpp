#include "sqopt/dispatch.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <json.hpp>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "sqopt/corpus.hpp"
#include "sqopt/gencvx.hpp"
#include "sqopt/optcert.hpp"
#include "sqopt/plot.hpp"
#include "sqopt/problem.hpp"

namespace sqo {

namespace {

using json = nlohmann::ordered_json;
using Section = std::map<std::string, std::string>;

struct Config {
  std::map<std::string, Section> sections;

  bool has(const std::string& s) const { return sections.count(s) > 0; }

  std::string get(const std::string& s, const std::string& k, const std::string& fallback = "") const {
    auto it = sections.find(s);
    if (it == sections.end()) return fallback;
    auto kt = it->second.find(k);
    return kt == it->second.end() ? fallback : kt->second;
  }

  std::string require(const std::string& s, const std::string& k) const {
    std::string v = get(s, k);
    if (v.empty()) throw Error(ErrorCode::ConfigError, "missing [" + s + "] " + k);
    return v;
  }

  double number(const std::string& s, const std::string& k, double fallback) const {
    std::string v = get(s, k);
    if (v.empty()) return fallback;
    try {
      return param_double({{k, v}}, k, fallback);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "[" + s + "] " + k + ": " + e.what());
    }
  }
};

const std::map<std::string, std::set<std::string>> kSchema{
    {"run", {"command", "seed", "tol"}},
    {"point", {"x"}},
    {"omega", {"set"}},
    {"function", {"id", "params"}},
    {"objective", {"id", "params"}},
    {"constraint", {"id", "params", "beta", "gamma", "K"}},
    {"subdiff", {"beta", "gamma", "K", "kinds", "candidates", "window"}},
    {"region", {"set", "gamma", "gamma_max", "points"}},
    {"certificate", {"mode", "grid", "radius", "level", "gamma0"}},
    {"penalty", {"delta", "ks", "grid"}},
    {"corpus", {"case"}},
};

const std::map<std::string, std::set<std::string>> kCommandSections{
    {"subdiff", {"run", "point", "function", "subdiff"}},
    {"convexity", {"run", "function", "region"}},
    {"normalcone", {"run", "point", "omega", "constraint"}},
    {"certify", {"run", "point", "omega", "objective", "constraint", "function", "certificate"}},
    {"penalize", {"run", "point", "omega", "objective", "penalty"}},
    {"corpus", {"run", "corpus"}},
};

std::string section_kind(const std::string& name) {
  if (name.rfind("constraint.", 0) == 0) {
    std::string n = name.substr(11);
    if (!n.empty() && n.find_first_not_of("0123456789") == std::string::npos) return "constraint";
  }
  return name;
}

Config parse_config(const std::string& command, const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  Config cfg;
  const std::set<std::string>& allowed = kCommandSections.at(command);
  for (const auto& [name, node] : tree) {
    if (node.empty() && !node.data().empty()) throw Error(ErrorCode::ConfigError, "key '" + name + "' outside a section");
    std::string kind = section_kind(name);
    auto schema = kSchema.find(kind);
    if (schema == kSchema.end()) throw Error(ErrorCode::ConfigError, "unknown section [" + name + "]");
    if (!allowed.count(kind)) throw Error(ErrorCode::ConfigError, "section [" + name + "] is not used by " + command);
    Section s;
    for (const auto& [key, v] : node) {
      if (!schema->second.count(key)) throw Error(ErrorCode::ConfigError, "unknown key '" + key + "' in [" + name + "]");
      s[key] = v.get_value<std::string>();
    }
    cfg.sections[name] = s;
  }
  std::string declared = cfg.get("run", "command");
  if (!declared.empty() && declared != command)
    throw Error(ErrorCode::ConfigError, "config is for '" + declared + "', not '" + command + "'");
  return cfg;
}

json jnum(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json jvec(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(jnum(v[i]));
  return a;
}

json jhyp(const std::vector<Hypothesis>& hs) {
  json a = json::array();
  for (const Hypothesis& h : hs) a.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  return a;
}

struct Outcome {
  json input = json::object();
  json results = json::object();
  json anchors = json::object();
  int code = exit_code::kOk;
  std::string summary;
  std::string svg;
};

Vec point(const Config& cfg) {
  try {
    return parse_vector(cfg.require("point", "x"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, std::string("[point] x: ") + e.what());
  }
}

FnModel function_from(const Config& cfg, const std::string& section, int dim, Params* params = nullptr) {
  Params p = parse_params(cfg.get(section, "params"));
  if (params) *params = p;
  return catalog(cfg.require(section, "id"), p, dim);
}

std::vector<ConstraintDecl> constraint_decls(const Config& cfg) {
  std::map<int, ConstraintDecl> byindex;
  for (const auto& [name, s] : cfg.sections) {
    if (section_kind(name) != "constraint") continue;
    ConstraintDecl d;
    d.id = cfg.require(name, "id");
    d.params = parse_params(cfg.get(name, "params"));
    d.beta = cfg.number(name, "beta", 1.0);
    d.gamma = cfg.number(name, "gamma", 0.0);
    d.K = cfg.get(name, "K", "R");
    byindex[std::stoi(name.substr(11))] = d;
  }
  std::vector<ConstraintDecl> out;
  for (auto& [i, d] : byindex) out.push_back(d);
  if (out.empty()) throw Error(ErrorCode::ConfigError, "no [constraint.N] sections");
  return out;
}

ConstraintSystem system_from(const Config& cfg, int dim) {
  return build_system(constraint_decls(cfg), cfg.require("omega", "set"), dim);
}

std::pair<double, double> window(const Config& cfg, double x) {
  std::string w = cfg.get("subdiff", "window");
  if (w.empty()) return {x - 2, x + 2};
  std::vector<double> v = parse_list(w, 2, "window");
  if (!(v[0] < v[1])) throw Error(ErrorCode::ConfigError, "window needs lo < hi");
  return {v[0], v[1]};
}

const char* kStrongAnchor =
    "\\max\\{h(y), h(\\bar{x})\\} \\geq h(\\bar{x}) + \\frac{\\lambda}{\\beta} \\langle \\xi, y - \\bar{x}\\rangle + "
    "\\frac{\\lambda}{2} (\\gamma - \\frac{\\lambda}{\\beta} - \\lambda \\gamma ) \\lVert y - \\bar{x} \\rVert^{2}";

Outcome run_subdiff(const Config& cfg, const RunOptions& opt) {
  Outcome o;
  Vec x = point(cfg);
  const int dim = static_cast<int>(x.size());
  Params fp;
  FnModel h = function_from(cfg, "function", dim, &fp);
  SubdiffSpec spec;
  spec.beta = cfg.number("subdiff", "beta", 1.0);
  spec.gamma = cfg.number("subdiff", "gamma", 0.0);
  spec.K = parse_set(cfg.get("subdiff", "K", "R"), dim);
  spec.validate(dim);
  YGridOptions grid;
  if (opt.seed) grid.seed = *opt.seed;
  const double tol = opt.tol.value_or(tol::kMember);

  o.input = {{"function", h.name()}, {"x", jvec(x)}, {"beta", jnum(spec.beta)}, {"gamma", jnum(spec.gamma)},
             {"K", cfg.get("subdiff", "K", "R")}, {"tol", jnum(tol)}};
  o.anchors["strong"] = kStrongAnchor;

  std::string cands = cfg.get("subdiff", "candidates");
  if (!cands.empty()) {
    json arr = json::array();
    for (const std::string& c : split_list(cands, ';')) {
      Vec xi = parse_vector(c);
      MembershipVerdict mv = strong_member(h, x, spec, xi, grid, tol);
      json e{{"xi", jvec(xi)}, {"member", mv.member}, {"margin", jnum(mv.margin)}, {"grid_size", mv.grid_size}};
      if (!mv.member) e["witness_y"] = jvec(mv.witness_y), e["witness_lambda"] = jnum(mv.witness_lambda);
      arr.push_back(e);
    }
    o.results["members"] = arr;
  }
  if (dim != 1) {
    if (cands.empty()) throw Error(ErrorCode::ConfigError, "sets are reconstructed on the line; give [subdiff] candidates in R^n");
    o.summary = "membership verdicts for " + std::to_string(o.results["members"].size()) + " candidates";
    return o;
  }

  IntervalOptions io;
  io.grid = grid;
  io.tol = tol;
  IntervalApprox s = strong_interval_1d(h, x[0], spec, io);
  o.results["strong"] = {{"set", s.inner.to_string()}, {"outer", s.outer.to_string()}, {"resolution", jnum(s.resolution)},
                         {"note", s.note}};
  std::vector<std::string> kinds = split_list(
      cfg.get("subdiff", "kinds", "regular,limiting,horizon,fenchel_moreau,greenberg_pierskalla,quasiconvex"), ',');
  json classical = json::object();
  for (const std::string& k : kinds) {
    if (k.empty()) continue;
    SubdiffKind kind;
    try {
      kind = subdiff_kind_from_string(k);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, e.what());
    }
    IntervalApprox c = classical_subdiff_1d(h, x[0], kind, {}, grid);
    classical[k] = {{"set", c.inner.to_string()}, {"note", c.note}};
  }
  o.results["classical"] = classical;
  RealSet1D nop = normal_operator_1d(h, x[0], grid);
  o.results["normal_operator"] = nop.to_string();
  o.anchors["normal_operator"] = "N_{h}(\\bar{x}) = (S_{h}(\\bar{x}) - \\bar{x})^{\\circ}";
  o.anchors["quasiconvex"] =
      "\\partial^{q}h(x) = \\partial^{FM}h(x)\\cap N(S_{h}(x), x) \\text{ if } N(S^{<}_{h}(x), x)\\neq \\{0\\}";
  o.summary = "strong subdifferential " + s.inner.to_string();
  if (opt.plot) {
    auto [lo, hi] = window(cfg, x[0]);
    PlotSpec ps;
    ps.title = h.name() + " at x = " + fmt_double(x[0]);
    ps.h = &h;
    ps.xbar = x[0];
    ps.lo = lo;
    ps.hi = hi;
    ps.sublevel = reconstruct_line(sublevel_set(h, x, false), lo, hi);
    ps.subdiff = s.inner;
    ps.subdiff_label = "strong subdifferential";
    ps.normal_cone = nop;
    o.svg = render_svg(ps);
  }
  return o;
}

Outcome run_convexity(const Config& cfg, const RunOptions& opt) {
  Outcome o;
  std::string region_text = cfg.get("region", "set");
  Params fp;
  int dim = 1;
  if (!region_text.empty() && region_text.rfind("box(", 0) == 0) {
    std::string lo = split_list(region_text.substr(4), ';').front();
    dim = static_cast<int>(split_list(lo, ',').size());
  }
  FnModel h = function_from(cfg, "function", dim, &fp);
  SetOracle region;
  if (!region_text.empty()) region = parse_set(region_text, dim);
  else if (h.ann().sq_region) region = *h.ann().sq_region;
  else throw Error(ErrorCode::ConfigError, "missing [region] set");
  SamplingPlan plan;
  if (opt.seed) plan.seed = *opt.seed;
  plan.points = static_cast<int>(cfg.number("region", "points", plan.points));
  if (plan.points < 2) throw Error(ErrorCode::ConfigError, "[region] points must be >= 2");
  o.input = {{"function", h.name()}, {"region", region_text.empty() ? region.label : region_text},
             {"seed", plan.seed}, {"points", plan.points}};
  o.anchors["strong_quasiconvexity"] =
      "h(\\lambda y + (1-\\lambda)x) \\leq \\max\\{h(y), h(x)\\} - \\lambda(1-\\lambda)\\frac{\\gamma}{2}\\lVert x-y\\rVert^{2}";
  auto report = [&](const SQReport& r) {
    json j{{"verdict", r.verdict == SQVerdict::Verified ? "Verified" : "Refuted"},
           {"violation", jnum(r.violation)},
           {"samples", r.samples}};
    if (r.verdict == SQVerdict::Refuted) j["x"] = jvec(r.x), j["y"] = jvec(r.y), j["lambda"] = jnum(r.lambda);
    return j;
  };
  if (!cfg.get("region", "gamma").empty()) {
    double g = cfg.number("region", "gamma", 0.0);
    SQReport r = sq_check(h, region, g, plan);
    o.results["gamma"] = jnum(g);
    o.results["sq_check"] = report(r);
    o.summary = std::string(r.verdict == SQVerdict::Verified ? "Verified" : "Refuted") + " at gamma " + fmt_double(g);
  } else {
    ModulusEstimate m = modulus_estimate(h, region, cfg.number("region", "gamma_max", 10.0), opt.tol.value_or(1e-3), plan);
    o.results["quasiconvex"] = m.quasiconvex;
    o.results["gamma_lo"] = jnum(m.gamma_lo);
    o.results["gamma_hi"] = jnum(m.gamma_hi);
    if (std::isfinite(m.gamma_hi)) o.results["refutation"] = report(m.witness);
    o.summary = m.quasiconvex ? "modulus in [" + fmt_double(m.gamma_lo) + ", " + fmt_double(m.gamma_hi) + "]"
                              : std::string("not quasiconvex on the region");
  }
  if (h.name().rfind("qfp", 0) == 0) {
    QFPInstance q = qfp_from_params(fp);
    o.results["qfp_modulus"] = jnum(q.modulus());
    o.anchors["qfp_modulus"] = "\\gamma =\\lambda_{\\min} (A)/M";
  }
  return o;
}

json cone_json(const ConeDescription& c) {
  json pats = json::array();
  for (const std::string& p : c.patterns) pats.push_back(p);
  return {{"set", c.set.to_string()}, {"union", c.raw_union.to_string()}, {"patterns", pats}};
}

Outcome run_normalcone(const Config& cfg, const RunOptions&) {
  Outcome o;
  Vec x = point(cfg);
  if (x.size() != 1) throw Error(ErrorCode::ConfigError, "normalcone works on the line");
  ConstraintSystem cs = system_from(cfg, 1);
  o.input = {{"x", jvec(x)}, {"omega", cfg.require("omega", "set")}, {"constraints", cs.gs.size()}};
  std::vector<int> act = active_set(cs, x);
  json a = json::array();
  for (int j : act) a.push_back(j + 1);
  o.results["active"] = a;
  json per = json::array();
  for (const ActiveData& d : active_data_1d(cs, x[0]))
    per.push_back({{"constraint", d.j + 1},
                   {"strong", d.strong.to_string()},
                   {"normal_operator", d.normal.to_string()},
                   {"horizon", d.horizon.to_string()}});
  o.results["per_constraint"] = per;
  RealSet1D N = omega_normal_cone_1d(cs, x[0]);
  o.results["normal_cone"] = N.to_string();
  ConeDescription lower = normal_cone_lower(cs, x);
  o.results["lower_estimate"] = cone_json(lower);
  GCQReport g = gcq_check(cs, x);
  o.results["gcq"] = {{"holds", g.holds}, {"assembled", g.assembled.to_string()}};
  if (g.witness) o.results["gcq"]["witness"] = jnum(*g.witness);
  ClosureReport cl = closure_conditions(cs, x);
  o.results["closure_conditions"] = {{"pointed", cl.pointed},
                                     {"zero_excluded", cl.zero_excluded},
                                     {"horizon_trivial", cl.horizon_trivial},
                                     {"holds", cl.holds}};
  EqualityReport eq = normal_cone_equality_check(cs, x);
  o.results["equality"] = {{"hypotheses", jhyp(eq.hypotheses)},
                           {"hypotheses_hold", eq.hypotheses_hold},
                           {"rhs", eq.rhs.to_string()},
                           {"equal", eq.equal}};
  for (SlaterVariant v : {SlaterVariant::S, SlaterVariant::SN}) {
    SlaterReport s = slater_check(cs, x, v);
    json j{{"holds", s.holds}, {"vacuous", s.vacuous}, {"tried", s.tried}};
    if (s.holds) j["direction"] = jvec(s.direction);
    o.results[v == SlaterVariant::S ? "slater" : "slater_sn"] = j;
  }
  o.anchors["lower_estimate"] =
      "\\overline{\\cup_{\\mu} (\\sum_{\\mu_j>0} \\mu_j \\partial_{\\beta_j,\\gamma_j}^{K_j} g_j(\\bar{x}) + "
      "\\sum_{\\mu_j=0} N_{g_j}(\\bar{x}))} \\subset N(\\Omega, \\bar{x})";
  o.anchors["gcq"] =
      "N(\\Omega, \\bar{x}) = \\bigcup_{\\mu} ( \\sum_{\\mu_{j} >0} \\mu_{j} \\partial_{\\beta_{j}, \\gamma_{j}}^{K_{j}} "
      "g_{j}(\\bar{x}) + \\sum_{\\mu_{j} = 0} \\partial^{\\infty} g_{j}(\\bar{x}) )";
  o.summary = "N(Omega, x) = " + N.to_string() + ", GCQ " + (g.holds ? "holds" : "fails");
  {
    PlotSpec ps;
    ps.title = "normal cone at x = " + fmt_double(x[0]);
    ps.xbar = x[0];
    ps.lo = x[0] - 2;
    ps.hi = x[0] + 2;
    if (cs.omega.line()) ps.sublevel = *cs.omega.line();
    ps.subdiff = lower.set;
    ps.subdiff_label = "lower estimate";
    ps.normal_cone = N;
    o.svg = render_svg(ps);
  }
  return o;
}

json cert_json(const FJCertificate& c) {
  json act = json::array(), mu = json::array(), sub = json::array();
  for (int j : c.active) act.push_back(j + 1);
  for (double m : c.mu) mu.push_back(jnum(m));
  for (const Vec& s : c.subgradients) sub.push_back(jvec(s));
  return {{"classification", to_string(c.classification)},
          {"gamma0", jnum(c.gamma0)},
          {"gamma0_hat", c.gamma0_hat},
          {"active", act},
          {"mu", mu},
          {"subgradients", sub},
          {"objective_vector", jvec(c.objective_vector)},
          {"residual", jnum(c.residual)},
          {"note", c.note}};
}

json growth_json(const GrowthReport& g) {
  json j{{"mu_bar", jnum(g.mu_bar)},       {"radius", jnum(g.radius)},   {"verified", g.verified},
         {"worst_gap", jnum(g.worst_gap)}, {"samples", g.samples},       {"hypotheses", jhyp(g.hypotheses)}};
  if (g.worst_y.size()) j["worst_y"] = jvec(g.worst_y);
  if (g.kkt_form_checked) j["worst_gap_kkt"] = jnum(g.worst_gap_kkt);
  if (g.pseudoconvex_checked) j["worst_gap_pseudoconvex"] = jnum(g.worst_gap_pseudoconvex);
  return j;
}

int certify_code(Classification c) {
  switch (c) {
    case Classification::KKT: return exit_code::kOk;
    case Classification::FJ: return exit_code::kFJ;
    case Classification::NotCertifiable: return exit_code::kNotCertifiable;
  }
  return exit_code::kNotCertifiable;
}

const char* kFJAnchor =
    "0 \\in \\gamma_0 \\partial f(\\bar{x}) + \\hat{\\gamma}_0 \\partial^{\\infty} f(\\bar{x}) + \\sum_{\\mu_j>0} \\mu_j "
    "\\partial_{\\beta_j,\\gamma_j}^{K_j} g_j(\\bar{x}) + \\sum_{\\mu_j=0} \\partial^{\\infty} g_j(\\bar{x})";

Outcome run_certify(const Config& cfg, const RunOptions& opt) {
  Outcome o;
  Vec x = point(cfg);
  const int dim = static_cast<int>(x.size());
  FnModel f = function_from(cfg, "objective", dim);
  std::string mode = cfg.get("certificate", "mode", "fj");
  const double radius = cfg.number("certificate", "radius", 0.5);
  o.anchors["fj"] = kFJAnchor;
  o.anchors["growth"] = "\\bar{\\mu} \\lVert y-\\bar{x}\\rVert^{2} \\leq \\gamma_{0}\\langle v, y - \\bar{x} \\rangle + "
                        "\\hat{\\gamma}_{0} \\langle v^{\\infty}, y - \\bar{x} \\rangle, \\; \\bar{\\mu} = \\frac{1}{2}\\sum_j "
                        "\\beta_j\\gamma_j\\mu_j";
  if (mode == "qfp") {
    Params qp;
    FnModel h = function_from(cfg, "function", dim, &qp);
    if (h.name().rfind("qfp", 0) != 0) throw Error(ErrorCode::ConfigError, "qfp mode needs [function] id = qfp");
    QFPInstance q = qfp_from_params(qp);
    double level = cfg.number("certificate", "level", kInf);
    if (!std::isfinite(level)) throw Error(ErrorCode::ConfigError, "qfp mode needs [certificate] level");
    std::optional<double> g0;
    if (!cfg.get("certificate", "gamma0").empty()) g0 = cfg.number("certificate", "gamma0", 0.0);
    QFPSufficiencyReport r = qfp_sufficiency(q, level, f, x, g0, radius, 1024, opt.seed.value_or(7));
    o.input = {{"mode", "qfp"}, {"objective", f.name()}, {"x", jvec(x)}, {"level", jnum(level)}, {"radius", jnum(radius)}};
    o.results["certificate"] = cert_json(r.cert);
    o.results["fm_subgradient"] = jvec(r.fm_subgradient);
    o.results["fm_validated"] = r.fm_validated;
    o.results["gamma"] = jnum(r.gamma);
    o.results["certified"] = r.certified;
    o.results["growth"] = growth_json(r.growth);
    o.anchors["qfp"] = "0 \\in \\gamma_{0} v + \\hat{\\gamma}_{0} v^{\\infty} + \\mu \\partial^{FM} (g_{1} - \\alpha g_{2}) "
                       "(\\bar{x}), \\; \\bar{\\mu}=\\frac{1}{2}\\mu \\gamma";
    o.code = r.certified ? certify_code(r.cert.classification) : exit_code::kNotCertifiable;
    o.summary = std::string(to_string(r.cert.classification)) + ", growth " + (r.growth.verified ? "verified" : "not verified");
    return o;
  }
  if (mode != "fj") throw Error(ErrorCode::ConfigError, "[certificate] mode must be fj or qfp");
  if (cfg.has("function")) throw Error(ErrorCode::ConfigError, "[function] is only used with mode = qfp");
  ConstraintSystem cs = system_from(cfg, dim);
  FJSearchOptions fo;
  fo.grid = static_cast<int>(cfg.number("certificate", "grid", fo.grid));
  if (fo.grid < 1) throw Error(ErrorCode::ConfigError, "[certificate] grid must be positive");
  if (opt.tol) fo.tol = *opt.tol;
  o.input = {{"mode", "fj"}, {"objective", f.name()}, {"x", jvec(x)}, {"omega", cfg.require("omega", "set")},
             {"grid", fo.grid}, {"tol", jnum(fo.tol)}, {"radius", jnum(radius)}};
  FJSearchReport r = fj_search(f, cs, x, fo);
  o.results["certificate"] = cert_json(r.best);
  o.results["min_residual"] = jnum(r.min_residual);
  o.results["coarse_residual"] = jnum(r.coarse_residual);
  o.results["evaluated"] = r.evaluated;
  if (dim == 1) {
    o.results["objective_set"] = r.objective_set.to_string();
    json ss = json::array(), hs = json::array();
    for (const RealSet1D& s : r.strong_sets) ss.push_back(s.to_string());
    for (const RealSet1D& s : r.horizon_sets) hs.push_back(s.to_string());
    o.results["strong_sets"] = ss;
    o.results["horizon_sets"] = hs;
  }
  NNAMCReport nn = nnamc_check(f, cs, x);
  o.results["nnamc"] = {{"holds", nn.holds}, {"pattern", nn.pattern}};
  if (r.best.classification != Classification::NotCertifiable) {
    GrowthReport g = sufficiency_growth(f, cs, x, r.best, radius);
    o.results["growth"] = growth_json(g);
  }
  o.code = certify_code(r.best.classification);
  o.summary = std::string(to_string(r.best.classification)) + ", residual " + fmt_double(r.best.residual);
  return o;
}

Outcome run_penalize(const Config& cfg, const RunOptions&) {
  Outcome o;
  Vec x = point(cfg);
  const int dim = static_cast<int>(x.size());
  FnModel f = function_from(cfg, "objective", dim);
  SetOracle omega = parse_set(cfg.require("omega", "set"), dim);
  double delta = cfg.number("penalty", "delta", 1.0);
  int grid = static_cast<int>(cfg.number("penalty", "grid", 40001));
  std::vector<double> ks;
  std::string kt = cfg.get("penalty", "ks");
  if (!kt.empty())
    for (const std::string& s : split_list(kt, ',')) ks.push_back(param_double({{"k", s}}, "k", 0.0));
  PenaltyReport r = penalize_certify(f, omega, x, delta, ks, grid);
  o.input = {{"objective", f.name()}, {"omega", cfg.require("omega", "set")}, {"x", jvec(x)}, {"delta", jnum(delta)},
             {"grid", grid}};
  json steps = json::array();
  for (const PenaltyStep& s : r.steps)
    steps.push_back({{"k", jnum(s.k)}, {"y", jvec(s.y)}, {"v", jvec(s.v)}, {"normal", jvec(s.normal)}, {"value", jnum(s.value)}});
  o.results["steps"] = steps;
  o.results["limit"] = to_string(r.limit);
  o.results["v"] = jvec(r.v);
  o.results["residual"] = jnum(r.residual);
  o.results["grid_step"] = jnum(r.grid_step);
  o.anchors["penalty"] = "\\min f(x) + k\\, d(x, \\Omega)^{2} + \\frac{1}{2}\\lVert x-\\bar{x}\\rVert^{2}, \\; x \\in "
                         "\\bar{B}(\\bar{x}, \\delta/2)";
  o.anchors["limit"] = "0 \\in v + N(\\Omega, \\bar{x})";
  o.code = r.limit == PenaltyCase::NonStationaryEvidence ? exit_code::kNotCertifiable : exit_code::kOk;
  o.summary = std::string(to_string(r.limit)) + ", residual " + fmt_double(r.residual);
  return o;
}

Outcome run_corpus(const Config& cfg, const RunOptions& opt) {
  Outcome o;
  CorpusTolerances tol;
  if (opt.tol) tol.endpoint = *opt.tol;
  std::string only = !opt.case_id.empty() ? opt.case_id : cfg.get("corpus", "case");
  std::vector<std::string> ids = only.empty() ? list_cases() : std::vector<std::string>{only};
  o.input = {{"cases", ids.size()}, {"endpoint_tol", jnum(tol.endpoint)}};
  json cases = json::array();
  int passed = 0;
  for (const std::string& id : ids) {
    CaseResult r = run_case(id, tol);
    json qs = json::array();
    for (const QuantityResult& q : r.quantities) {
      qs.push_back({{"label", q.label}, {"kind", q.kind}, {"module", q.module}, {"expected", q.expected},
                    {"computed", q.computed}, {"pass", q.pass}});
      o.anchors[id + "." + q.label] = q.anchor;
    }
    cases.push_back({{"id", id}, {"pass", r.pass}, {"quantities", qs}});
    passed += r.pass ? 1 : 0;
  }
  o.results["cases"] = cases;
  o.results["passed"] = passed;
  o.results["total"] = ids.size();
  o.code = passed == static_cast<int>(ids.size()) ? exit_code::kOk : exit_code::kFJ;
  o.summary = std::to_string(passed) + "/" + std::to_string(ids.size()) + " corpus cases pass";
  return o;
}

bool precondition(ErrorCode c) {
  return c == ErrorCode::PreconditionFailed || c == ErrorCode::ActiveLevelMismatch || c == ErrorCode::InfeasiblePoint ||
         c == ErrorCode::PointOutsideDomain || c == ErrorCode::PointNotInSet;
}

bool config_like(ErrorCode c) {
  return c == ErrorCode::ConfigError || c == ErrorCode::ParseError || c == ErrorCode::UnknownCatalogId ||
         c == ErrorCode::InvalidParams || c == ErrorCode::DimensionMismatch || c == ErrorCode::UnknownCase;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"subdiff", "convexity", "normalcone", "certify", "penalize", "corpus"};
  return names;
}

RunResult run_command(const std::string& command, const std::string& config_text, const RunOptions& opt) {
  RunResult out;
  json report;
  report["command"] = command;
  bool parsed = false;
  try {
    if (!kCommandSections.count(command)) throw Error(ErrorCode::ConfigError, "unknown command '" + command + "'");
    Config cfg = parse_config(command, config_text);
    RunOptions o = opt;
    if (!o.seed && !cfg.get("run", "seed").empty()) o.seed = static_cast<std::uint64_t>(cfg.number("run", "seed", 0));
    if (!o.tol && !cfg.get("run", "tol").empty()) o.tol = cfg.number("run", "tol", 0);
    if (o.tol && !(*o.tol > 0)) throw Error(ErrorCode::ConfigError, "tol must be positive");
    parsed = true;
    Outcome r;
    if (command == "subdiff") r = run_subdiff(cfg, o);
    else if (command == "convexity") r = run_convexity(cfg, o);
    else if (command == "normalcone") r = run_normalcone(cfg, o);
    else if (command == "certify") r = run_certify(cfg, o);
    else if (command == "penalize") r = run_penalize(cfg, o);
    else r = run_corpus(cfg, o);
    if (o.seed) r.input["seed"] = *o.seed;
    report["status"] = "ok";
    report["input"] = r.input;
    report["results"] = r.results;
    report["anchors"] = r.anchors;
    out.exit_code = r.code;
    out.summary = r.summary;
    if (opt.plot) out.svg = r.svg;
  } catch (const Error& e) {
    int code = exit_code::kCompute;
    if (e.code() == ErrorCode::ConfigError || (!parsed && config_like(e.code()))) code = exit_code::kConfig;
    else if (config_like(e.code()) && e.code() != ErrorCode::DimensionMismatch) code = exit_code::kConfig;
    else if (command == "certify" && precondition(e.code())) code = exit_code::kPrecondition;
    report["status"] = "error";
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    out.exit_code = code;
    out.summary = e.what();
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"code", "ComputeError"}, {"message", e.what()}};
    out.exit_code = exit_code::kCompute;
    out.summary = e.what();
  }
  report["exit_code"] = out.exit_code;
  out.report = report.dump(2) + "\n";
  return out;
}

}  // namespace sqo

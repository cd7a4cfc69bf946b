#include "sqopt/corpus.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "sqopt/gencvx.hpp"
#include "sqopt/optcert.hpp"
#include "sqopt/problem.hpp"

namespace sqo {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

const std::set<std::string> kSystemKeys{"title", "x", "omega", "f", "f_params", "g", "beta", "gamma", "K", "h",
                                        "h_params"};

bool is_system_key(const std::string& k) {
  if (kSystemKeys.count(k)) return true;
  // g1_params, g2_params, ...
  if (k.size() > 8 && k[0] == 'g' && k.substr(k.size() - 7) == "_params") {
    std::string n = k.substr(1, k.size() - 8);
    return !n.empty() && std::all_of(n.begin(), n.end(), ::isdigit);
  }
  return false;
}

int quantity_index(const std::string& key, char prefix) {
  if (key.size() < 2 || key[0] != prefix) return -1;
  std::string n = key.substr(1);
  if (!std::all_of(n.begin(), n.end(), ::isdigit)) return -1;
  return std::stoi(n);
}

struct Context {
  const CorpusCase& c;
  int dim = 1;
  Vec x;

  explicit Context(const CorpusCase& cc) : c(cc) {
    x = parse_vector(get("x", "0"));
    dim = static_cast<int>(x.size());
  }

  std::string get(const std::string& k, const std::string& fallback = "") const {
    auto it = c.system.find(k);
    return it == c.system.end() ? fallback : it->second;
  }

  std::vector<std::string> constraint_ids() const {
    std::string g = get("g");
    return g.empty() ? std::vector<std::string>{} : split_list(g, ',');
  }

  std::vector<ConstraintDecl> decls() const {
    std::vector<std::string> ids = constraint_ids();
    std::vector<double> betas = parse_list(get("beta", "1"), ids.size(), "beta");
    std::vector<double> gammas = parse_list(get("gamma", "0"), ids.size(), "gamma");
    std::vector<std::string> Ks = split_list(get("K", "R"), ';');
    if (Ks.size() == 1 && ids.size() > 1) Ks.assign(ids.size(), Ks.front());
    if (Ks.size() != ids.size()) throw Error(ErrorCode::ConfigError, c.id + ": K list does not match g");
    std::vector<ConstraintDecl> out;
    for (size_t j = 0; j < ids.size(); ++j) {
      ConstraintDecl d;
      d.id = ids[j];
      d.params = parse_params(get("g" + std::to_string(j + 1) + "_params"));
      d.beta = betas[j];
      d.gamma = gammas[j];
      d.K = Ks[j];
      out.push_back(d);
    }
    return out;
  }

  ConstraintSystem system() const {
    if (constraint_ids().empty()) throw Error(ErrorCode::ConfigError, c.id + ": quantity needs constraints g");
    return build_system(decls(), get("omega", "R"), dim);
  }

  FnModel objective() const {
    if (get("f").empty()) throw Error(ErrorCode::ConfigError, c.id + ": quantity needs an objective f");
    return catalog(get("f"), parse_params(get("f_params")), dim);
  }

  /// fn=f, fn=h, fn=g<j>, or a catalog id; defaults to g1.
  FnModel function(const Params& args, Params* fparams = nullptr) const {
    std::string fn = args.count("fn") ? args.at("fn") : "g1";
    Params p;
    std::string id = fn;
    if (fn == "f") {
      id = get("f");
      p = parse_params(get("f_params"));
    } else if (fn == "h") {
      id = get("h");
      p = parse_params(get("h_params"));
    } else if (fn.size() > 1 && fn[0] == 'g' && std::all_of(fn.begin() + 1, fn.end(), ::isdigit)) {
      size_t j = std::stoul(fn.substr(1));
      std::vector<std::string> ids = constraint_ids();
      if (j < 1 || j > ids.size()) throw Error(ErrorCode::ConfigError, c.id + ": no constraint " + fn);
      id = ids[j - 1];
      p = parse_params(get(fn + "_params"));
    }
    if (fparams) *fparams = p;
    return catalog(id, p, dim);
  }

  /// (beta, gamma, K) from the quantity, falling back on the constraint named
  /// by fn when it is one.
  SubdiffSpec spec(const Params& args) const {
    SubdiffSpec s;
    s.K = SetOracle::whole(dim);
    std::string fn = args.count("fn") ? args.at("fn") : "g1";
    if (fn.size() > 1 && fn[0] == 'g' && std::all_of(fn.begin() + 1, fn.end(), ::isdigit)) {
      size_t j = std::stoul(fn.substr(1));
      std::vector<ConstraintDecl> ds = decls();
      if (j >= 1 && j <= ds.size()) {
        s.beta = ds[j - 1].beta;
        s.gamma = ds[j - 1].gamma;
        s.K = parse_set(ds[j - 1].K, dim);
      }
    }
    s.beta = param_double(args, "beta", s.beta);
    s.gamma = param_double(args, "gamma", s.gamma);
    if (args.count("K")) s.K = parse_set(args.at("K"), dim);
    s.validate(dim);
    return s;
  }
};

std::string holds(bool b) { return b ? "holds" : "fails"; }

SubdiffKind classical_kind(const std::string& which) {
  static const std::map<std::string, SubdiffKind> alias{{"fm", SubdiffKind::FenchelMoreau},
                                                        {"gp", SubdiffKind::GreenbergPierskalla},
                                                        {"q", SubdiffKind::Quasiconvex}};
  auto it = alias.find(which);
  return it != alias.end() ? it->second : subdiff_kind_from_string(which);
}

void check_args(const CorpusQuantity& q, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : q.args)
    if (!allowed.count(k)) throw Error(ErrorCode::ConfigError, "quantity " + q.label + ": unknown key " + k);
}

struct Computed {
  std::string module;
  std::string value;
  bool is_set = false;
};

Computed compute(const Context& ctx, const CorpusQuantity& q) {
  const std::string& k = q.kind;
  const Vec& x = ctx.x;
  auto need_line = [&] {
    if (ctx.dim != 1) throw Error(ErrorCode::ConfigError, "quantity " + q.label + " is computed on the line only");
  };
  if (k == "strong") {
    check_args(q, {"fn", "beta", "gamma", "K"});
    need_line();
    return {"strongsub", strong_set_1d(ctx.function(q.args), x[0], ctx.spec(q.args)).to_string(), true};
  }
  if (k == "classical") {
    check_args(q, {"fn", "which"});
    need_line();
    if (!q.args.count("which")) throw Error(ErrorCode::ConfigError, "classical needs which=");
    return {"strongsub", classical_subdiff_1d(ctx.function(q.args), x[0], classical_kind(q.args.at("which"))).inner.to_string(),
            true};
  }
  if (k == "normal_operator") {
    check_args(q, {"fn"});
    need_line();
    return {"strongsub", normal_operator_1d(ctx.function(q.args), x[0]).to_string(), true};
  }
  if (k == "fhreg") {
    check_args(q, {"fn", "beta", "gamma", "K"});
    need_line();
    RegularityReport r = f_regularity_check(ctx.function(q.args), x[0], ctx.spec(q.args));
    return {"strongsub", r.regular ? "regular" : "not_regular", false};
  }
  if (k == "normal_cone") {
    check_args(q, {});
    need_line();
    return {"levelcone", omega_normal_cone_1d(ctx.system(), x[0]).to_string(), true};
  }
  if (k == "lower") {
    check_args(q, {});
    return {"levelcone", normal_cone_lower(ctx.system(), x).set.to_string(), true};
  }
  if (k == "equality") {
    check_args(q, {"part"});
    EqualityReport r = normal_cone_equality_check(ctx.system(), x);
    std::string part = q.args.count("part") ? q.args.at("part") : "verdict";
    if (part == "rhs") return {"levelcone", r.rhs.to_string(), true};
    if (part == "hypotheses") return {"levelcone", holds(r.hypotheses_hold), false};
    return {"levelcone", r.equal ? "equal" : "strict", false};
  }
  if (k == "slater") {
    check_args(q, {"variant"});
    std::string v = q.args.count("variant") ? q.args.at("variant") : "S";
    SlaterReport r = slater_check(ctx.system(), x, v == "SN" ? SlaterVariant::SN : SlaterVariant::S);
    return {"levelcone", holds(r.holds), false};
  }
  if (k == "maxrule") {
    check_args(q, {"part", "beta", "K"});
    need_line();
    ConstraintSystem cs = ctx.system();
    MaxRuleReport r = max_rule_check(cs.gs, x[0], cs.specs, param_double(q.args, "beta", 1.0),
                                     q.args.count("K") ? RealSet1D::parse(q.args.at("K")) : RealSet1D::all());
    std::string part = q.args.count("part") ? q.args.at("part") : "verdict";
    if (part == "union") return {"levelcone", r.union_side.to_string(), true};
    if (part == "sup") return {"levelcone", r.sup_side.to_string(), true};
    return {"levelcone", r.verdict == MaxRuleVerdict::Equality ? "equality" : "strict", false};
  }
  if (k == "gcq") {
    check_args(q, {});
    return {"optcert", holds(gcq_check(ctx.system(), x).holds), false};
  }
  if (k == "closure") {
    check_args(q, {});
    return {"optcert", holds(closure_conditions(ctx.system(), x).holds), false};
  }
  if (k == "fj") {
    check_args(q, {});
    return {"optcert", to_string(fj_search(ctx.objective(), ctx.system(), x).best.classification), false};
  }
  if (k == "nnamc") {
    check_args(q, {});
    return {"optcert", holds(nnamc_check(ctx.objective(), ctx.system(), x).holds), false};
  }
  if (k == "growth") {
    check_args(q, {"radius"});
    FnModel f = ctx.objective();
    ConstraintSystem cs = ctx.system();
    FJSearchReport fj = fj_search(f, cs, x);
    if (fj.best.classification == Classification::NotCertifiable) return {"optcert", "no_certificate", false};
    GrowthReport g = sufficiency_growth(f, cs, x, fj.best, param_double(q.args, "radius", 0.5));
    return {"optcert", g.verified ? "verified" : "refuted", false};
  }
  if (k == "penalize") {
    check_args(q, {"delta"});
    FnModel f = ctx.objective();
    PenaltyReport r = penalize_certify(f, ctx.system().omega, x, param_double(q.args, "delta", 1.0));
    return {"optcert", to_string(r.limit), false};
  }
  if (k == "sq") {
    check_args(q, {"fn", "gamma", "region", "seed"});
    Params fp;
    FnModel h = ctx.function(q.args, &fp);
    SetOracle region;
    if (q.args.count("region")) {
      region = parse_set(q.args.at("region"), ctx.dim);
    } else if (h.ann().sq_region) {
      region = *h.ann().sq_region;
    } else {
      throw Error(ErrorCode::ConfigError, "sq needs region=");
    }
    SamplingPlan plan;
    plan.seed = static_cast<std::uint64_t>(param_double(q.args, "seed", 7));
    SQReport r = sq_check(h, region, param_double(q.args, "gamma", 0.0), plan);
    return {"gencvx", r.verdict == SQVerdict::Verified ? "verified" : "refuted", false};
  }
  throw Error(ErrorCode::ConfigError, "unknown quantity kind '" + k + "'");
}

}  // namespace

bool corpus_match(const std::string& expected, const std::string& computed, bool is_set, double tol) {
  if (!is_set) return lower(trim(expected)) == lower(trim(computed));
  RealSet1D got = RealSet1D::parse(computed);
  if (expected == "nonempty") return !got.is_empty();
  if (expected == "empty") return got.is_empty();
  return RealSet1D::parse(expected).approx_equal(got, tol);
}

std::vector<CorpusCase> parse_corpus(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("corpus: ") + e.what());
  }
  std::vector<CorpusCase> out;
  std::set<std::string> ids;
  for (const auto& [id, section] : tree) {
    if (section.empty()) throw Error(ErrorCode::ConfigError, "corpus: entry '" + id + "' outside a case section");
    if (!ids.insert(id).second) throw Error(ErrorCode::ConfigError, "corpus: duplicate case " + id);
    CorpusCase c;
    c.id = id;
    std::map<int, std::string> qs, anchors;
    for (const auto& [key, node] : section) {
      std::string val = node.get_value<std::string>();
      int qi = quantity_index(key, 'q'), ai = quantity_index(key, 'a');
      if (qi >= 0) {
        qs[qi] = val;
      } else if (ai >= 0) {
        anchors[ai] = val;
      } else if (is_system_key(key)) {
        c.system[key] = val;
      } else {
        throw Error(ErrorCode::ConfigError, "corpus: case " + id + " has unknown key " + key);
      }
    }
    c.title = c.system.count("title") ? c.system.at("title") : id;
    for (const auto& [i, line] : qs) {
      CorpusQuantity q;
      q.label = "q" + std::to_string(i);
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) throw Error(ErrorCode::ConfigError, "corpus: " + id + "." + q.label + " lacks '->'");
      std::string lhs = trim(line.substr(0, arrow));
      q.expected = trim(line.substr(arrow + 2));
      size_t sp = lhs.find(' ');
      q.kind = lhs.substr(0, sp);
      q.args = parse_params(sp == std::string::npos ? "" : lhs.substr(sp + 1));
      auto a = anchors.find(i);
      if (a == anchors.end() || trim(a->second).empty())
        throw Error(ErrorCode::ConfigError, "corpus: " + id + "." + q.label + " has no anchor a" + std::to_string(i));
      q.anchor = trim(a->second);
      c.quantities.push_back(q);
    }
    for (const auto& [i, a] : anchors)
      if (!qs.count(i)) throw Error(ErrorCode::ConfigError, "corpus: " + id + " anchor a" + std::to_string(i) + " has no quantity");
    if (c.quantities.empty()) throw Error(ErrorCode::ConfigError, "corpus: case " + id + " has no quantities");
    out.push_back(std::move(c));
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "corpus: no cases");
  return out;
}

const std::vector<CorpusCase>& corpus_cases() {
  static const std::vector<CorpusCase> cases = parse_corpus(kCorpusText);
  return cases;
}

std::vector<std::string> list_cases() {
  std::vector<std::string> out;
  for (const CorpusCase& c : corpus_cases()) out.push_back(c.id);
  return out;
}

const CorpusCase& find_case(const std::string& id) {
  for (const CorpusCase& c : corpus_cases())
    if (c.id == id) return c;
  throw Error(ErrorCode::UnknownCase, "no corpus case '" + id + "'");
}

CaseResult run_case(const CorpusCase& c, const CorpusTolerances& tol) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  CaseResult out;
  out.id = c.id;
  out.pass = true;
  Context ctx(c);
  for (const CorpusQuantity& q : c.quantities) {
    auto q0 = clock::now();
    QuantityResult r;
    r.label = q.label;
    r.kind = q.kind;
    r.expected = q.expected;
    r.anchor = q.anchor;
    try {
      Computed got = compute(ctx, q);
      r.module = got.module;
      r.computed = got.value;
      r.pass = corpus_match(q.expected, got.value, got.is_set, tol.endpoint);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw Error(ErrorCode::ConfigError, c.id + ": " + e.what());
      r.computed = std::string("error: ") + e.what();
      r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(clock::now() - q0).count();
    out.pass = out.pass && r.pass;
    out.quantities.push_back(r);
  }
  out.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return out;
}

CaseResult run_case(const std::string& id, const CorpusTolerances& tol) { return run_case(find_case(id), tol); }

}  // namespace sqo

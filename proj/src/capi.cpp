#include "sqopt/sqopt.h"

#include <cstring>
#include <string>

#include "sqopt/corpus.hpp"
#include "sqopt/dispatch.hpp"
#include "sqopt/problem.hpp"
#include "sqopt/strongsub.hpp"

struct sqo_function {
  sqo::FnModel model;
};

struct sqo_realset {
  sqo::RealSet1D set;
};

struct sqo_report {
  sqo::RunResult result;
};

namespace {

thread_local std::string g_last_error;

sqo_status status_of(sqo::ErrorCode c) {
  using sqo::ErrorCode;
  switch (c) {
    case ErrorCode::DimensionMismatch: return SQO_ERR_DIMENSION;
    case ErrorCode::UnknownCatalogId:
    case ErrorCode::UnknownCase: return SQO_ERR_UNKNOWN_ID;
    case ErrorCode::InvalidParams:
    case ErrorCode::NonPositiveStep:
    case ErrorCode::BracketTooSmall:
    case ErrorCode::InvalidRegion: return SQO_ERR_INVALID_PARAMS;
    case ErrorCode::ParseError: return SQO_ERR_PARSE;
    case ErrorCode::PointNotInSet:
    case ErrorCode::PointOutsideDomain:
    case ErrorCode::InfeasiblePoint: return SQO_ERR_DOMAIN;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::ActiveLevelMismatch: return SQO_ERR_PRECONDITION;
    case ErrorCode::ConfigError: return SQO_ERR_CONFIG;
    default: return SQO_ERR_COMPUTE;
  }
}

template <class F>
sqo_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SQO_OK;
  } catch (const sqo::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SQO_ERR_COMPUTE;
  }
}

sqo_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return SQO_ERR_NULL;
}

sqo::Vec vec_of(const double* p, int n) {
  sqo::Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = p[i];
  return v;
}

}  // namespace

extern "C" {

const char* sqo_last_error(void) { return g_last_error.c_str(); }

const char* sqo_version(void) { return "1.0.0"; }

sqo_status sqo_function_create(const char* id, const char* params, int dim, sqo_function** out) {
  if (!id || !out) return null_arg("id/out");
  *out = nullptr;
  return guard([&] {
    sqo::FnModel f = sqo::catalog(id, sqo::parse_params(params ? params : ""), dim);
    *out = new sqo_function{std::move(f)};
  });
}

void sqo_function_destroy(sqo_function* f) { delete f; }

int sqo_function_dim(const sqo_function* f) { return f ? f->model.dim() : 0; }

sqo_status sqo_function_eval(const sqo_function* f, const double* x, double* value) {
  if (!f || !x || !value) return null_arg("f/x/value");
  return guard([&] { *value = f->model.eval(vec_of(x, f->model.dim())); });
}

#define SQO_DERIVATIVE(name, fn)                                                              \
  sqo_status name(const sqo_function* f, const double* x, const double* d, double* value) {   \
    if (!f || !x || !d || !value) return null_arg("f/x/d/value");                              \
    return guard([&] {                                                                          \
      int n = f->model.dim();                                                                   \
      *value = sqo::fn(f->model, vec_of(x, n), vec_of(d, n));                                   \
    });                                                                                         \
  }

SQO_DERIVATIVE(sqo_dini_upper, dini_upper)
SQO_DERIVATIVE(sqo_dini_lower, dini_lower)
SQO_DERIVATIVE(sqo_hadamard_upper, hadamard_upper)

#undef SQO_DERIVATIVE

sqo_status sqo_realset_parse(const char* text, sqo_realset** out) {
  if (!text || !out) return null_arg("text/out");
  *out = nullptr;
  return guard([&] { *out = new sqo_realset{sqo::RealSet1D::parse(text)}; });
}

void sqo_realset_destroy(sqo_realset* s) { delete s; }

sqo_status sqo_realset_format(const sqo_realset* s, char* buf, size_t len, size_t* needed) {
  if (!s) return null_arg("set");
  return guard([&] {
    std::string t = s->set.to_string();
    if (needed) *needed = t.size() + 1;
    if (buf && len > 0) {
      size_t n = std::min(len - 1, t.size());
      std::memcpy(buf, t.data(), n);
      buf[n] = '\0';
    }
  });
}

sqo_status sqo_realset_contains(const sqo_realset* s, double x, int* result) {
  if (!s || !result) return null_arg("set/result");
  return guard([&] { *result = s->set.contains(x) ? 1 : 0; });
}

sqo_status sqo_realset_support(const sqo_realset* s, double d, double* value) {
  if (!s || !value) return null_arg("set/value");
  return guard([&] { *value = s->set.support(d); });
}

sqo_status sqo_strong_member(const sqo_function* h, const double* x, double beta, double gamma, const char* K,
                             const double* xi, int* member, double* margin) {
  if (!h || !x || !xi || !member) return null_arg("h/x/xi/member");
  return guard([&] {
    int n = h->model.dim();
    sqo::SubdiffSpec spec;
    spec.beta = beta;
    spec.gamma = gamma;
    spec.K = sqo::parse_set(K ? K : "R", n);
    sqo::MembershipVerdict v = sqo::strong_member(h->model, vec_of(x, n), spec, vec_of(xi, n));
    *member = v.member ? 1 : 0;
    if (margin) *margin = v.margin;
  });
}

sqo_status sqo_strong_interval(const sqo_function* h, double x, double beta, double gamma, const char* K,
                               sqo_realset** out) {
  if (!h || !out) return null_arg("h/out");
  *out = nullptr;
  return guard([&] {
    sqo::SubdiffSpec spec;
    spec.beta = beta;
    spec.gamma = gamma;
    spec.K = sqo::parse_set(K ? K : "R", 1);
    if (h->model.dim() != 1) throw sqo::Error(sqo::ErrorCode::DimensionMismatch, "strong_interval needs dimension one");
    *out = new sqo_realset{sqo::strong_interval_1d(h->model, x, spec).inner};
  });
}

sqo_status sqo_worst_lambda(const double* xi, const double* d, int dim, double beta, double gamma, double* lambda,
                            double* sup_phi) {
  if (!xi || !d || !lambda || !sup_phi) return null_arg("xi/d/lambda/sup_phi");
  return guard([&] {
    if (dim < 1) throw sqo::Error(sqo::ErrorCode::DimensionMismatch, "dim must be positive");
    sqo::LambdaWorst w = sqo::worst_lambda_margin(vec_of(xi, dim), vec_of(d, dim), beta, gamma);
    *lambda = w.lambda;
    *sup_phi = w.sup_phi;
  });
}

sqo_status sqo_run(const char* command, const char* config_text, const char* options, sqo_report** out) {
  if (!command || !out) return null_arg("command/out");
  *out = nullptr;
  return guard([&] {
    sqo::RunOptions opt;
    sqo::Params p;
    try {
      p = sqo::parse_params(options ? options : "");
    } catch (const sqo::Error& e) {
      throw sqo::Error(sqo::ErrorCode::ConfigError, std::string("options: ") + e.what());
    }
    for (const auto& [k, v] : p) {
      if (k == "case") opt.case_id = v;
      else if (k == "tol") opt.tol = sqo::param_double(p, k, 0.0);
      else if (k == "seed") opt.seed = static_cast<std::uint64_t>(sqo::param_double(p, k, 0.0));
      else if (k == "plot") opt.plot = v == "1" || v == "true";
      else throw sqo::Error(sqo::ErrorCode::ConfigError, "unknown option " + k);
    }
    *out = new sqo_report{sqo::run_command(command, config_text ? config_text : "", opt)};
  });
}

const char* sqo_report_json(const sqo_report* r) { return r ? r->result.report.c_str() : ""; }

const char* sqo_report_svg(const sqo_report* r) { return r ? r->result.svg.c_str() : ""; }

const char* sqo_report_summary(const sqo_report* r) { return r ? r->result.summary.c_str() : ""; }

int sqo_report_exit_code(const sqo_report* r) { return r ? r->result.exit_code : -1; }

void sqo_report_destroy(sqo_report* r) { delete r; }

const char* sqo_corpus_list(void) {
  static const std::string text = [] {
    std::string s;
    try {
      for (const std::string& id : sqo::list_cases()) s += id + "\n";
    } catch (const std::exception& e) {
      g_last_error = e.what();
    }
    return s;
  }();
  return text.c_str();
}

const char* sqo_catalog_list(void) {
  static const std::string text = [] {
    std::string s;
    for (const sqo::CatalogEntry& e : sqo::catalog_entries()) s += e.id + "\t" + e.summary + "\n";
    return s;
  }();
  return text.c_str();
}

}  // extern "C"

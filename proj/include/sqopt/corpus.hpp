#pragma once

#include <string>
#include <vector>

#include "sqopt/funcspace.hpp"

namespace sqo {

/// One expected quantity: "<kind> key=value ... -> <expected>" plus the
/// formula it reproduces.
struct CorpusQuantity {
  std::string label;
  std::string kind;
  Params args;
  std::string expected;
  std::string anchor;
};

struct CorpusCase {
  std::string id;
  std::string title;
  Params system;  // x, omega, f, g, beta, gamma, K, h and *_params entries
  std::vector<CorpusQuantity> quantities;
};

struct CorpusTolerances {
  double endpoint = 1e-3;
};

struct QuantityResult {
  std::string label;
  std::string kind;
  std::string module;
  std::string expected;
  std::string computed;
  std::string anchor;
  bool pass = false;
  double seconds = 0.0;
};

struct CaseResult {
  std::string id;
  bool pass = false;
  std::vector<QuantityResult> quantities;
  double seconds = 0.0;
};

/// Parses the INI corpus format; throws ConfigError on schema violations.
std::vector<CorpusCase> parse_corpus(const std::string& text);

/// Cases compiled into the library, in file order.
const std::vector<CorpusCase>& corpus_cases();
std::vector<std::string> list_cases();
const CorpusCase& find_case(const std::string& id);

CaseResult run_case(const CorpusCase& c, const CorpusTolerances& tol = {});
CaseResult run_case(const std::string& id, const CorpusTolerances& tol = {});

/// Compares "R", interval unions, "nonempty"/"empty" or verdict words.
bool corpus_match(const std::string& expected, const std::string& computed, bool is_set, double tol);

extern const char* const kCorpusText;

}  // namespace sqo

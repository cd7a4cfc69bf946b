#pragma once

#include <string>
#include <vector>

#include "sqopt/levelcone.hpp"

namespace sqo {

/// "R", "R^n", interval unions on the line ("[-1,0] U {2}"), and boxes
/// "box(lo_1,...,lo_n;hi_1,...,hi_n)".
SetOracle parse_set(const std::string& text, int dim);

std::vector<std::string> split_list(const std::string& text, char sep);

/// Comma-separated numbers; a single value is broadcast to `count`.
std::vector<double> parse_list(const std::string& text, size_t count, const std::string& what);

/// One constraint as written in configs: catalog id, its parameters and the
/// strong subdifferential data attached to it.
struct ConstraintDecl {
  std::string id;
  Params params;
  double beta = 1.0;
  double gamma = 0.0;
  std::string K = "R";
};

ConstraintSystem build_system(const std::vector<ConstraintDecl>& decls, const std::string& omega, int dim);

}  // namespace sqo

#include "sqopt/problem.hpp"

#include <algorithm>

namespace sqo {

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text, size_t count, const std::string& what) {
  std::vector<double> out;
  for (const std::string& s : split_list(text, ',')) out.push_back(param_double({{"v", s}}, "v", 0.0));
  if (out.size() == 1 && count > 1) out.assign(count, out.front());
  if (out.size() != count)
    throw Error(ErrorCode::ConfigError, what + ": expected " + std::to_string(count) + " values, got " + std::to_string(out.size()));
  return out;
}

SetOracle parse_set(const std::string& raw, int dim) {
  std::string text = split_list(raw, '\n').front();
  if (text == "R" || text == "R^" + std::to_string(dim)) return SetOracle::whole(dim);
  if (text.rfind("box(", 0) == 0 && text.back() == ')') {
    std::vector<std::string> halves = split_list(text.substr(4, text.size() - 5), ';');
    if (halves.size() != 2) throw Error(ErrorCode::ConfigError, "box needs 'lo;hi'");
    Vec lo = parse_vector(halves[0]), hi = parse_vector(halves[1]);
    if (lo.size() != dim || hi.size() != dim) throw Error(ErrorCode::DimensionMismatch, "box corners must have dimension " + std::to_string(dim));
    if ((lo.array() > hi.array()).any()) throw Error(ErrorCode::ConfigError, "box with lo > hi");
    return SetOracle::box(lo, hi);
  }
  if (dim != 1) throw Error(ErrorCode::ConfigError, "set '" + text + "' is only meaningful on the line");
  return SetOracle::from_line(RealSet1D::parse(text));
}

ConstraintSystem build_system(const std::vector<ConstraintDecl>& decls, const std::string& omega, int dim) {
  ConstraintSystem cs;
  cs.omega = parse_set(omega, dim);
  for (const ConstraintDecl& d : decls) {
    cs.gs.push_back(catalog(d.id, d.params, dim));
    SubdiffSpec s;
    s.beta = d.beta;
    s.gamma = d.gamma;
    s.K = parse_set(d.K, dim);
    cs.specs.push_back(s);
  }
  cs.validate();
  return cs;
}

}  // namespace sqo

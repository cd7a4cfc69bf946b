#include "sqopt/realset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "sqopt/common.hpp"

namespace sqo {

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

RealSet1D RealSet1D::all() { return interval(-kInf, kInf, false, false); }
RealSet1D RealSet1D::point(double a) { return interval(a, a, true, true); }
RealSet1D RealSet1D::closed(double a, double b) { return interval(a, b, true, true); }
RealSet1D RealSet1D::open(double a, double b) { return interval(a, b, false, false); }

RealSet1D RealSet1D::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return from_parts({Interval{lo, hi, lo_closed, hi_closed}});
}

RealSet1D RealSet1D::from_parts(std::vector<Interval> parts) {
  RealSet1D s;
  s.parts_ = std::move(parts);
  s.normalize();
  return s;
}

void RealSet1D::normalize() {
  std::vector<Interval> kept;
  for (Interval p : parts_) {
    if (std::isnan(p.lo) || std::isnan(p.hi)) continue;
    if (std::isinf(p.lo)) p.lo_closed = false;
    if (std::isinf(p.hi)) p.hi_closed = false;
    if (p.lo > p.hi) continue;
    if (p.lo == p.hi && !(p.lo_closed && p.hi_closed)) continue;
    kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> merged;
  for (const Interval& p : kept) {
    if (!merged.empty()) {
      Interval& q = merged.back();
      bool overlap = p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed));
      if (overlap) {
        if (p.hi > q.hi) {
          q.hi = p.hi;
          q.hi_closed = p.hi_closed;
        } else if (p.hi == q.hi) {
          q.hi_closed = q.hi_closed || p.hi_closed;
        }
        if (p.lo == q.lo) q.lo_closed = q.lo_closed || p.lo_closed;
        continue;
      }
    }
    merged.push_back(p);
  }
  parts_ = std::move(merged);
}

namespace {

struct Cursor {
  std::string_view s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " in \"" + std::string(s) + "\" at offset " + std::to_string(i));
  }
  double plain_number() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '-' ||
                            s[i] == '+')) {
      if (i > start && (s[i] == '-' || s[i] == '+') && s[i - 1] != 'e' && s[i - 1] != 'E') break;
      ++i;
    }
    std::string tok(s.substr(start, i - start));
    if (tok.empty()) fail("expected number");
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    const char* b = tok.c_str();
    if (*b == '+') ++b;
    double v = 0.0;
    auto res = std::from_chars(b, tok.c_str() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.c_str() + tok.size()) fail("bad number '" + tok + "'");
    return v;
  }
  double number() {
    double v = plain_number();
    if (eat('/')) {
      double d = plain_number();
      if (d == 0.0 || std::isinf(d) || std::isinf(v)) fail("bad fraction");
      v /= d;
    }
    return v;
  }
};

}  // namespace

RealSet1D RealSet1D::parse(std::string_view text) {
  Cursor c{text};
  if (c.done()) c.fail("empty input");
  if (c.eat('{')) {
    if (c.eat('}')) {
      if (!c.done()) c.fail("trailing characters");
      return empty();
    }
    c.i = 0;
  }
  c.skip();
  if (c.i < text.size() && text[c.i] == 'R') {
    ++c.i;
    if (!c.done()) c.fail("trailing characters");
    return all();
  }
  std::vector<Interval> parts;
  while (true) {
    if (c.eat('{')) {
      double a = c.number();
      if (!c.eat('}')) c.fail("expected '}'");
      if (std::isinf(a)) c.fail("infinite singleton");
      parts.push_back({a, a, true, true});
      if (c.done()) break;
      if (!c.eat('U')) c.fail("expected 'U'");
      continue;
    }
    bool lo_closed;
    if (c.eat('[')) lo_closed = true;
    else if (c.eat('(')) lo_closed = false;
    else c.fail("expected '[' or '('");
    double lo = c.number();
    if (!c.eat(',')) c.fail("expected ','");
    double hi = c.number();
    bool hi_closed;
    if (c.eat(']')) hi_closed = true;
    else if (c.eat(')')) hi_closed = false;
    else c.fail("expected ']' or ')'");
    if ((std::isinf(lo) && lo_closed) || (std::isinf(hi) && hi_closed)) c.fail("closed infinite endpoint");
    if (lo > hi) c.fail("reversed interval");
    parts.push_back({lo, hi, lo_closed, hi_closed});
    if (c.done()) break;
    if (!c.eat('U')) c.fail("expected 'U'");
  }
  return from_parts(std::move(parts));
}

std::string RealSet1D::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (size_t k = 0; k < parts_.size(); ++k) {
    const Interval& p = parts_[k];
    if (k) out += " U ";
    if (p.lo == p.hi) {
      out += "{" + fmt_double(p.lo) + "}";
      continue;
    }
    out += p.lo_closed ? "[" : "(";
    out += fmt_double(p.lo) + "," + fmt_double(p.hi);
    out += p.hi_closed ? "]" : ")";
  }
  return out;
}

bool RealSet1D::is_all() const {
  return parts_.size() == 1 && std::isinf(parts_[0].lo) && std::isinf(parts_[0].hi);
}

bool RealSet1D::is_singleton() const { return parts_.size() == 1 && parts_[0].lo == parts_[0].hi; }

bool RealSet1D::is_bounded() const {
  return parts_.empty() || (std::isfinite(parts_.front().lo) && std::isfinite(parts_.back().hi));
}

bool RealSet1D::is_closed() const {
  for (const Interval& p : parts_) {
    if (std::isfinite(p.lo) && !p.lo_closed) return false;
    if (std::isfinite(p.hi) && !p.hi_closed) return false;
  }
  return true;
}

bool RealSet1D::contains(double x) const {
  for (const Interval& p : parts_)
    if (p.contains(x)) return true;
  return false;
}

bool RealSet1D::contains_approx(double x, double slack) const {
  for (const Interval& p : parts_)
    if (x >= p.lo - slack && x <= p.hi + slack) return true;
  return false;
}

double RealSet1D::inf() const { return parts_.empty() ? kInf : parts_.front().lo; }
double RealSet1D::sup() const { return parts_.empty() ? -kInf : parts_.back().hi; }

double RealSet1D::distance(double x) const {
  double best = kInf;
  for (const Interval& p : parts_) {
    double d = 0.0;
    if (x < p.lo) d = p.lo - x;
    else if (x > p.hi) d = x - p.hi;
    best = std::min(best, d);
  }
  return best;
}

double RealSet1D::nearest(double x) const {
  double best = std::nan("");
  double bd = kInf;
  for (const Interval& p : parts_) {
    double c = std::clamp(x, p.lo, p.hi);
    double d = std::abs(c - x);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

double RealSet1D::support(double d) const {
  if (parts_.empty()) return -kInf;
  if (d > 0) return d * sup();
  if (d < 0) return d * inf();
  return 0.0;
}

RealSet1D RealSet1D::unite(const RealSet1D& other) const {
  std::vector<Interval> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::intersect(const RealSet1D& other) const {
  std::vector<Interval> parts;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      Interval c;
      if (a.lo > b.lo) c.lo = a.lo, c.lo_closed = a.lo_closed;
      else if (b.lo > a.lo) c.lo = b.lo, c.lo_closed = b.lo_closed;
      else c.lo = a.lo, c.lo_closed = a.lo_closed && b.lo_closed;
      if (a.hi < b.hi) c.hi = a.hi, c.hi_closed = a.hi_closed;
      else if (b.hi < a.hi) c.hi = b.hi, c.hi_closed = b.hi_closed;
      else c.hi = a.hi, c.hi_closed = a.hi_closed && b.hi_closed;
      parts.push_back(c);
    }
  }
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::minkowski(const RealSet1D& other) const {
  std::vector<Interval> parts;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      parts.push_back({a.lo + b.lo, a.hi + b.hi, a.lo_closed && b.lo_closed, a.hi_closed && b.hi_closed});
    }
  }
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::scale(double t) const {
  if (parts_.empty()) return {};
  if (t == 0.0) return point(0.0);
  std::vector<Interval> parts;
  for (const Interval& p : parts_) {
    if (t > 0) parts.push_back({t * p.lo, t * p.hi, p.lo_closed, p.hi_closed});
    else parts.push_back({t * p.hi, t * p.lo, p.hi_closed, p.lo_closed});
  }
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::closure() const {
  std::vector<Interval> parts = parts_;
  for (Interval& p : parts) {
    p.lo_closed = std::isfinite(p.lo);
    p.hi_closed = std::isfinite(p.hi);
  }
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::hull() const {
  if (parts_.empty()) return {};
  return interval(parts_.front().lo, parts_.back().hi, parts_.front().lo_closed, parts_.back().hi_closed);
}

RealSet1D RealSet1D::positive_hull() const {
  std::vector<Interval> parts;
  for (const Interval& p : parts_) {
    if (p.lo < 0 && p.hi > 0) return all();
    if (p.lo >= 0) {
      if (p.hi == 0) parts.push_back({0, 0, true, true});
      else parts.push_back({0, kInf, p.lo == 0 && p.lo_closed, false});
    } else {
      if (p.lo == 0 && p.hi == 0) parts.push_back({0, 0, true, true});
      else parts.push_back({-kInf, 0, false, p.hi == 0 && p.hi_closed});
    }
  }
  return from_parts(std::move(parts));
}

RealSet1D RealSet1D::cone() const { return positive_hull().unite(point(0.0)); }

RealSet1D RealSet1D::polar() const {
  bool pos = sup() > 0;
  bool neg = inf() < 0;
  if (pos && neg) return point(0.0);
  if (pos) return interval(-kInf, 0, false, true);
  if (neg) return interval(0, kInf, true, false);
  return all();
}

RealSet1D RealSet1D::horizon() const {
  if (parts_.empty()) return {};
  RealSet1D out = point(0.0);
  if (std::isinf(sup())) out = out.unite(interval(0, kInf, true, false));
  if (std::isinf(inf())) out = out.unite(interval(-kInf, 0, false, true));
  return out;
}

bool RealSet1D::operator==(const RealSet1D& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (size_t k = 0; k < parts_.size(); ++k) {
    const Interval& a = parts_[k];
    const Interval& b = other.parts_[k];
    if (a.lo != b.lo || a.hi != b.hi || a.lo_closed != b.lo_closed || a.hi_closed != b.hi_closed) return false;
  }
  return true;
}

bool RealSet1D::approx_equal(const RealSet1D& other, double tol) const {
  if (parts_.size() != other.parts_.size()) return false;
  auto close = [tol](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::abs(x - y) <= tol;
  };
  for (size_t k = 0; k < parts_.size(); ++k) {
    const Interval& a = parts_[k];
    const Interval& b = other.parts_[k];
    if (!close(a.lo, b.lo) || !close(a.hi, b.hi)) return false;
  }
  return true;
}

}  // namespace sqo

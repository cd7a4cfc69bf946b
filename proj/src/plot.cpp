#include "sqopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace sqo {

namespace {

constexpr double kW = 640, kH = 480;
constexpr double kLeft = 50, kRight = 610;
constexpr double kGraphTop = 40, kGraphBottom = 280;
constexpr int kSamples = 401;

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string num(double v) { return fmt("%.3f", v == 0.0 ? 0.0 : v); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

struct Axis {
  double lo, hi;
  double px(double x) const { return kLeft + (x - lo) / (hi - lo) * (kRight - kLeft); }
};

// Horizontal band for a set on the line, clipped to the window; pieces that
// leave the window end in an arrow.
std::string band(const RealSet1D& set, const Axis& ax, double y, const std::string& label, const std::string& colour) {
  std::string out = "<g class=\"band\">\n";
  out += "<text x=\"" + num(kLeft) + "\" y=\"" + num(y - 8) + "\" font-size=\"12\">" + escape(label) + ": " +
         escape(set.to_string()) + "</text>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kRight) + "\" y2=\"" + num(y) +
         "\" stroke=\"#cccccc\"/>\n";
  if (set.is_empty()) {
    out += "<text x=\"" + num(0.5 * (kLeft + kRight)) + "\" y=\"" + num(y + 14) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#999999\">empty</text>\n";
  }
  for (const Interval& p : set.parts()) {
    double a = std::max(p.lo, ax.lo), b = std::min(p.hi, ax.hi);
    if (a > b) continue;
    double xa = ax.px(a), xb = ax.px(b);
    if (a == b) {
      out += "<circle cx=\"" + num(xa) + "\" cy=\"" + num(y) + "\" r=\"4\" fill=\"" + colour + "\"/>\n";
      continue;
    }
    out += "<line x1=\"" + num(xa) + "\" y1=\"" + num(y) + "\" x2=\"" + num(xb) + "\" y2=\"" + num(y) +
           "\" stroke=\"" + colour + "\" stroke-width=\"5\"/>\n";
    auto end = [&](double x, bool closed, bool cut) {
      if (cut) return;
      out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"4\" fill=\"" + (closed ? colour : "white") +
             "\" stroke=\"" + colour + "\"/>\n";
    };
    end(xa, p.lo_closed, p.lo < ax.lo);
    end(xb, p.hi_closed, p.hi > ax.hi);
  }
  out += "</g>\n";
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  if (!(spec.lo < spec.hi)) throw Error(ErrorCode::InvalidParams, "plot window needs lo < hi");
  Axis ax{spec.lo, spec.hi};
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) + "\" height=\"" + num(kH) +
                    "\" viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" + escape(spec.title) + "</text>\n";

  if (spec.h) {
    std::vector<std::pair<double, double>> pts;
    double ymin = kInf, ymax = -kInf;
    for (int i = 0; i < kSamples; ++i) {
      double x = spec.lo + (spec.hi - spec.lo) * i / (kSamples - 1);
      double v = spec.h->eval1(x);
      pts.emplace_back(x, v);
      if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!std::isfinite(ymin)) ymin = -1, ymax = 1;
    // keep the picture readable near poles
    double hx = spec.h->eval1(spec.xbar);
    if (std::isfinite(hx)) ymin = std::max(ymin, hx - 5), ymax = std::min(ymax, hx + 5);
    if (ymax - ymin < 1e-9) ymin -= 1, ymax += 1;
    auto py = [&](double v) {
      double c = std::clamp(v, ymin, ymax);
      return kGraphBottom - (c - ymin) / (ymax - ymin) * (kGraphBottom - kGraphTop);
    };
    out += "<g class=\"graph\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\">\n";
    std::string path;
    for (const auto& [x, v] : pts) {
      if (!std::isfinite(v)) {
        if (!path.empty()) out += "<polyline points=\"" + path + "\"/>\n";
        path.clear();
        continue;
      }
      if (!path.empty()) path += ' ';
      path += num(ax.px(x)) + "," + num(py(v));
    }
    if (!path.empty()) out += "<polyline points=\"" + path + "\"/>\n";
    out += "</g>\n";
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kGraphBottom) + "\" x2=\"" + num(kRight) + "\" y2=\"" +
           num(kGraphBottom) + "\" stroke=\"black\"/>\n";
    if (std::isfinite(hx))
      out += "<circle cx=\"" + num(ax.px(spec.xbar)) + "\" cy=\"" + num(py(hx)) + "\" r=\"3\" fill=\"#c0392b\"/>\n";
    out += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kGraphBottom + 14) + "\" font-size=\"11\">" + num(spec.lo) +
           "</text>\n";
    out += "<text x=\"" + num(kRight) + "\" y=\"" + num(kGraphBottom + 14) + "\" font-size=\"11\" text-anchor=\"end\">" +
           num(spec.hi) + "</text>\n";
  }

  double y = 320;
  if (spec.sublevel) {
    out += band(*spec.sublevel, ax, y, "sublevel set", "#27ae60");
    y += 50;
  }
  if (spec.subdiff) {
    out += band(*spec.subdiff, ax, y, spec.subdiff_label, "#8e44ad");
    y += 50;
  }
  if (spec.normal_cone) out += band(*spec.normal_cone, ax, y, "normal cone", "#d35400");
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ComputeError, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::ComputeError, "write failed for " + path);
}

}  // namespace sqo

#pragma once

#include <optional>
#include <string>

#include "sqopt/funcspace.hpp"

namespace sqo {

/// Line picture: graph of h on [lo, hi], and up to three bands below it
/// (sublevel set, a subdifferential, a normal cone drawn as rays from 0).
struct PlotSpec {
  std::string title;
  const FnModel* h = nullptr;
  double xbar = 0.0;
  double lo = -2.0;
  double hi = 2.0;
  std::optional<RealSet1D> sublevel;
  std::string subdiff_label = "subdifferential";
  std::optional<RealSet1D> subdiff;
  std::optional<RealSet1D> normal_cone;
};

/// Byte-deterministic SVG text; coordinates printed with three decimals.
std::string render_svg(const PlotSpec& spec);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace sqo

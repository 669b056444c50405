#pragma once

#include <string>
#include <vector>

#include "seppack/packing.hpp"
#include "seppack/separability.hpp"

namespace sep {

struct RenderOptions {
  bool certificates = false;  // draw separation lines from rho-separability
  double margin = 1.0;        // extra space around the drawing, body units
  SepOptions sep;
};

// Deterministic SVG of a 2D packing: translates, hull outline, inscribed and
// circumscribed circles, optional separation lines. d=3 is unsupported.
std::string render_svg(const Packing& P, const RenderOptions& opt = {});

}  // namespace sep

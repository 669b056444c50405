#pragma once

#include <vector>

#include "seppack/body.hpp"

namespace sep {

// A translative packing candidate: body, separability parameter rho >= 1 and
// translate centers. Construction validates shape only; the pairwise
// non-overlap invariant is checked by check_packing (separability module) so
// that violating inputs can be reported rather than rejected.
struct Packing {
  Body body;
  double rho = 1.0;
  std::vector<Vec> centers;

  Packing(Body b, double rho_, std::vector<Vec> centers_);

  int dim() const { return body.dim(); }
  int size() const { return static_cast<int>(centers.size()); }

  // instance scale for relative tolerances: max(R(C), max |c_i|)
  double scale() const;
};

}  // namespace sep

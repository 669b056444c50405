#include "seppack/packing.hpp"

#include <algorithm>
#include <cmath>

namespace sep {

Packing::Packing(Body b, double rho_, std::vector<Vec> centers_)
    : body(std::move(b)), rho(rho_), centers(std::move(centers_)) {
  if (!(rho >= 1.0)) fail(Errc::invalid_argument, "packing: rho must be >= 1");
  if (centers.empty()) fail(Errc::invalid_argument, "packing: need at least one center");
  if (!(body.inradius() > 0)) fail(Errc::invalid_body, "packing: body must have r(C) > 0");
  if (body.dim() == 2)
    for (auto& c : centers) c[2] = 0;
  for (const auto& c : centers)
    if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2]))
      fail(Errc::invalid_argument, "packing: non-finite center");
}

double Packing::scale() const {
  double s = body.circumradius();
  for (const auto& c : centers) s = std::max(s, norm2(c));
  return std::max(s, 1.0);
}

}  // namespace sep

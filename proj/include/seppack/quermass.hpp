#pragma once

#include <vector>

#include "seppack/hull.hpp"
#include "seppack/records.hpp"

namespace sep {

// volume of the i-dimensional unit ball; kappa(0) = 1
double kappa(int i);

// Mean i-dimensional projection M_i of a hull, 1 <= i <= d. Convention
// M_d = vol_d. Outer parallel parts enter through the exact Steiner
// expansion, so ball-body packing hulls are measured without discretization.
// Lower-dimensional hulls with zero offset have no agreed boundary measure
// and are rejected (except i = d, which is 0).
double mean_projection(const Hull& Q, int i);

// all of M_1..M_d at once
std::vector<double> mean_projections(const Hull& Q);

// d=2: perimeter; d=3: facet-area sum; offset parts via Steiner
double surface_area(const Hull& Q);

double hull_volume(const Hull& Q);

HullMetrics hull_metrics(const Hull& Q);

// M_i(Q) >= kappa_i (vol(Q)/kappa_d)^{i/d} for i = 1..d-1; holds for every
// convex body, so a failing record signals a metrics bug.
std::vector<InequalityRecord> af_ball_lower_bound(const Hull& Q);

struct SteinerCheckOptions {
  std::uint64_t mc_samples = 1'000'000;  // d = 3 only
  std::uint64_t seed = 2024;
  int threads = 1;
};

// vol(P + tB) against the Steiner polynomial whose coefficients are read
// from mean_projection: exact identity in d=2 (independent offset-region
// decomposition), Monte Carlo agreement within 3 sigma in d=3.
InequalityRecord steiner_check(const Hull& P, double t, const SteinerCheckOptions& opt = {});

// d=2 offset-region area computed by edge-strip + vertex-sector
// decomposition; the independent side of the Steiner identity
double offset_polygon_area(const Hull& P, double t);

// distance from a point to the polytope part of a hull (0 inside)
double distance_to_hull_part(const Hull& P, const Vec& x);

}  // namespace sep

#pragma once

#include <optional>
#include <vector>

#include "seppack/core.hpp"

namespace sep {

class Body;
struct Packing;

// Convex hull of a point set, possibly with an outer parallel radius
// ("offset"): the represented set is conv(verts) + offset * B^dim.
// Packing hulls of ball bodies use offset = body radius, which keeps all
// downstream metrics exact (Steiner) instead of polygonal approximations.
// Lower-dimensional hulls (point / segment / planar polygon in 3D) are
// first-class; hull_dim records the affine dimension of the polytope part.
struct Hull {
  int dim = 2;       // ambient dimension
  int hull_dim = 0;  // affine dimension of conv(verts)
  std::vector<Vec> verts;
  // dim == 3, hull_dim == 3: triangles (outward-oriented CCW)
  std::vector<std::array<int, 3>> facets;
  // dim == 3, hull_dim == 2: unit normal of the carrying plane (verts CCW wrt it)
  Vec plane_normal{0, 0, 0};
  double offset = 0;

  bool full_dimensional() const { return hull_dim == dim || offset > 0; }
};

struct HullMetrics {
  double inradius = 0;
  double circumradius = 0;
  std::vector<double> mean_projections;  // M_1 .. M_d
  double surface_area = 0;
  double volume = 0;
};

// Hull of a raw point set. Degenerate (affinely dependent) inputs yield a
// lower-dimensional hull; callers that require full dimension must check.
Hull convex_hull(const std::vector<Vec>& points, int dim);

// conv(union of translates): polygonal bodies hull the translated vertices,
// ball bodies carry the radius as an outer parallel offset.
Hull hull_of_packing(const Packing& P);

struct BallResult {
  Vec center{0, 0, 0};
  double radius = 0;
};

// minimum enclosing ball of the hull (offset included); randomized
// incremental with exact small-basis solves, deterministic internal seed
BallResult circumradius_hull(const Hull& Q);
BallResult min_enclosing_ball(const std::vector<Vec>& points, int dim);

// Chebyshev center: maximize t s.t. n_f.x + t <= b_f over all facets of the
// polytope part, then add the outer parallel offset.
BallResult inradius_hull(const Hull& Q);

// signed area of a CCW polygon (2D) / perimeter helpers used across modules
double polygon_area(const std::vector<Vec>& verts);
double polygon_perimeter(const std::vector<Vec>& verts);

// low-dimensional linear program: maximize obj.x subject to a_i.x <= b_i and
// |x_j| <= box. Seidel's randomized incremental algorithm; deterministic.
struct LinCon {
  std::vector<double> a;
  double b;
};
std::optional<std::vector<double>> lp_maximize(std::vector<LinCon> cons,
                                               const std::vector<double>& obj, double box,
                                               double eps);

// instance scale used for relative tolerances
double hull_scale(const Hull& Q);

}  // namespace sep

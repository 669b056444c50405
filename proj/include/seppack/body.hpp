#pragma once

#include <string>
#include <vector>

#include "seppack/core.hpp"

namespace sep {

enum class BodyKind { ball, polygon2, polytope3 };

// Facet inequality n.x <= b with unit normal n; the origin-interior invariant
// keeps every offset strictly positive.
struct Facet {
  Vec normal;
  double offset;
};

// An o-symmetric convex body: a ball, a symmetric convex polygon (counter-
// clockwise vertex list), or a symmetric 3-polytope. Explicit vertices are
// the primary representation; facet inequalities are derived at construction
// and drive gauge-norm and inradius queries.
class Body {
 public:
  static Body make_ball(int dim, double radius);
  static Body make_polygon(std::vector<Vec> vertices);       // d = 2
  static Body make_polytope(std::vector<Vec> vertices);      // d = 3

  // named fixtures used throughout tests and the CLI
  static Body unit_disk() { return make_ball(2, 1.0); }
  static Body square(double half_width);                      // vertices (+-h, +-h)
  static Body regular_hexagon(double circumradius);           // vertex on +x axis
  static Body cube(double half_width);
  static Body octahedron(double circumradius);

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double radius() const { return radius_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // 3D only: hull facet triangles over vertices()
  const std::vector<std::array<int, 3>>& facet_triangles() const { return triangles_; }

  double inradius() const { return inradius_; }
  double circumradius() const { return circumradius_; }
  double volume() const { return volume_; }

  bool is_ball() const { return kind_ == BodyKind::ball; }

 private:
  Body() = default;
  void finalize_polytope();

  BodyKind kind_ = BodyKind::ball;
  int dim_ = 2;
  double radius_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::array<int, 3>> triangles_;
  double inradius_ = 0;
  double circumradius_ = 0;
  double volume_ = 0;
};

struct Hyperplane {
  Vec normal;     // unit
  double offset;  // the set {x : normal.x = offset}
};

// support function h_C(u) = max{x.u : x in C}; throws on u = 0
double support(const Body& C, const Vec& u);

// gauge norm ||x||_C = inf{t : x in tC}; total, returns 0 at the origin
double gauge_norm(const Body& C, const Vec& x);

// (r(C), R(C))
std::pair<double, double> body_radii(const Body& C);

double body_volume(const Body& C);

std::string body_kind_name(BodyKind k);

}  // namespace sep

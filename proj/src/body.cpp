#include "seppack/body.hpp"

#include <algorithm>
#include <cmath>

#include "seppack/hull.hpp"

namespace sep {

Body Body::make_ball(int dim, double radius) {
  if (dim != 2 && dim != 3) fail(Errc::invalid_argument, "ball body: dim must be 2 or 3");
  if (!(radius >= 0) || !std::isfinite(radius))
    fail(Errc::invalid_body, "ball body: radius must be non-negative");
  Body b;
  b.kind_ = BodyKind::ball;
  b.dim_ = dim;
  b.radius_ = radius;
  b.inradius_ = radius;
  b.circumradius_ = radius;
  b.volume_ = dim == 2 ? kPi * radius * radius : 4.0 / 3.0 * kPi * radius * radius * radius;
  return b;
}

Body Body::make_polygon(std::vector<Vec> vertices) {
  if (vertices.size() < 4) fail(Errc::invalid_body, "polygon body: need at least 4 vertices");
  for (auto& v : vertices) v[2] = 0;
  if (polygon_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());

  Body b;
  b.kind_ = BodyKind::polygon2;
  b.dim_ = 2;
  b.vertices_ = std::move(vertices);

  const size_t n = b.vertices_.size();
  double diam = 0;
  for (const auto& v : b.vertices_) diam = std::max(diam, 2.0 * norm2(v));
  const double sym_tol = 1e-12 * std::max(diam, 1.0);

  // strict convexity, CCW
  for (size_t i = 0; i < n; ++i) {
    double c = cross2(b.vertices_[i], b.vertices_[(i + 1) % n], b.vertices_[(i + 2) % n]);
    if (c <= sym_tol * diam) fail(Errc::invalid_body, "polygon body: not strictly convex CCW");
  }
  // o-symmetry
  for (const auto& v : b.vertices_) {
    bool found = false;
    for (const auto& w : b.vertices_)
      if (norm2(v + w) <= sym_tol) { found = true; break; }
    if (!found) fail(Errc::invalid_body, "polygon body: not o-symmetric");
  }

  for (size_t i = 0; i < n; ++i) {
    const Vec& p = b.vertices_[i];
    const Vec& q = b.vertices_[(i + 1) % n];
    Vec e = q - p;
    Vec nrm = normalized(vec2(e[1], -e[0]));
    double off = dot(nrm, p);
    if (off <= 0) fail(Errc::invalid_body, "polygon body: origin not strictly interior");
    b.facets_.push_back({nrm, off});
  }
  b.inradius_ = b.facets_[0].offset;
  for (const auto& f : b.facets_) b.inradius_ = std::min(b.inradius_, f.offset);
  for (const auto& v : b.vertices_) b.circumradius_ = std::max(b.circumradius_, norm2(v));
  b.volume_ = polygon_area(b.vertices_);
  return b;
}

Body Body::make_polytope(std::vector<Vec> vertices) {
  if (vertices.size() < 4) fail(Errc::invalid_body, "polytope body: need at least 4 vertices");
  Body b;
  b.kind_ = BodyKind::polytope3;
  b.dim_ = 3;
  b.vertices_ = std::move(vertices);
  b.finalize_polytope();
  return b;
}

void Body::finalize_polytope() {
  double diam = 0;
  for (const auto& v : vertices_) diam = std::max(diam, 2.0 * norm2(v));
  const double sym_tol = 1e-12 * std::max(diam, 1.0);
  for (const auto& v : vertices_) {
    bool found = false;
    for (const auto& w : vertices_)
      if (norm2(v + w) <= sym_tol) { found = true; break; }
    if (!found) fail(Errc::invalid_body, "polytope body: not o-symmetric");
  }

  Hull h = convex_hull(vertices_, 3);
  if (h.hull_dim < 3) fail(Errc::invalid_body, "polytope body: vertices are not full-dimensional");
  if (h.verts.size() != vertices_.size())
    fail(Errc::invalid_body, "polytope body: vertex list contains non-extreme points");
  // map hull facets back to the body's own vertex indexing
  triangles_.clear();
  auto index_of = [&](const Vec& p) {
    for (size_t i = 0; i < vertices_.size(); ++i)
      if (norm2(vertices_[i] - p) <= 1e-9 * std::max(diam, 1.0)) return static_cast<int>(i);
    fail(Errc::internal, "polytope body: hull vertex not found in input");
  };
  for (const auto& t : h.facets)
    triangles_.push_back({index_of(h.verts[t[0]]), index_of(h.verts[t[1]]), index_of(h.verts[t[2]])});

  // facet planes, deduplicated
  facets_.clear();
  for (const auto& t : triangles_) {
    Vec n = cross(vertices_[t[1]] - vertices_[t[0]], vertices_[t[2]] - vertices_[t[0]]);
    double ln = norm2(n);
    if (ln <= 0) continue;
    n = (1.0 / ln) * n;
    double off = dot(n, vertices_[t[0]]);
    if (off <= 0) fail(Errc::invalid_body, "polytope body: origin not strictly interior");
    bool dup = false;
    for (const auto& f : facets_)
      if (norm2(f.normal - n) < 1e-9 && std::abs(f.offset - off) < 1e-9 * std::max(diam, 1.0)) {
        dup = true;
        break;
      }
    if (!dup) facets_.push_back({n, off});
  }

  inradius_ = facets_[0].offset;
  for (const auto& f : facets_) inradius_ = std::min(inradius_, f.offset);
  for (const auto& v : vertices_) circumradius_ = std::max(circumradius_, norm2(v));

  volume_ = 0;
  for (const auto& t : triangles_)
    volume_ += dot(cross(vertices_[t[0]], vertices_[t[1]]), vertices_[t[2]]) / 6.0;
}

Body Body::square(double h) {
  return make_polygon({vec2(h, h), vec2(-h, h), vec2(-h, -h), vec2(h, -h)});
}

Body Body::regular_hexagon(double R) {
  std::vector<Vec> v;
  for (int k = 0; k < 6; ++k) {
    double a = kPi / 3.0 * k;
    v.push_back(vec2(R * std::cos(a), R * std::sin(a)));
  }
  return make_polygon(std::move(v));
}

Body Body::cube(double h) {
  std::vector<Vec> v;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) v.push_back(vec3(sx * h, sy * h, sz * h));
  return make_polytope(std::move(v));
}

Body Body::octahedron(double R) {
  return make_polytope({vec3(R, 0, 0), vec3(-R, 0, 0), vec3(0, R, 0), vec3(0, -R, 0),
                        vec3(0, 0, R), vec3(0, 0, -R)});
}

double support(const Body& C, const Vec& u) {
  if (norm2sq(u) == 0) fail(Errc::invalid_direction, "support: zero direction");
  if (C.is_ball()) return C.radius() * norm2(u);
  double best = -1e300;
  for (const auto& v : C.vertices()) best = std::max(best, dot(v, u));
  return best;
}

double gauge_norm(const Body& C, const Vec& x) {
  if (C.is_ball()) {
    double n = norm2(x);
    if (n == 0) return 0;
    if (C.radius() <= 0) return 1e300;
    return n / C.radius();
  }
  // max over facets of n.x / offset; the largest ratio picks the facet the
  // ray from the origin through x exits at
  double best = 0;
  for (const auto& f : C.facets()) best = std::max(best, dot(f.normal, x) / f.offset);
  return best;
}

std::pair<double, double> body_radii(const Body& C) { return {C.inradius(), C.circumradius()}; }

double body_volume(const Body& C) { return C.volume(); }

std::string body_kind_name(BodyKind k) {
  switch (k) {
    case BodyKind::ball: return "ball";
    case BodyKind::polygon2: return "polygon";
    case BodyKind::polytope3: return "polytope";
  }
  return "?";
}

}  // namespace sep

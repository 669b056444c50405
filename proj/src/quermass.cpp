#include "seppack/quermass.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "seppack/mc.hpp"

namespace sep {

namespace {

constexpr double kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

// intrinsic M_0..M_d of the polytope part (no offset); M_0 = 1
std::vector<double> part_projections(const Hull& Q) {
  const int d = Q.dim;
  std::vector<double> m(d + 1, 0.0);
  m[0] = 1.0;
  if (d == 2) {
    if (Q.hull_dim == 1) {
      m[1] = 2.0 * norm2(Q.verts[1] - Q.verts[0]) / kPi;
    } else if (Q.hull_dim == 2) {
      m[1] = polygon_perimeter(Q.verts) / kPi;
      m[2] = polygon_area(Q.verts);
    }
    return m;
  }
  // d == 3
  if (Q.hull_dim == 1) {
    m[1] = 0.5 * norm2(Q.verts[1] - Q.verts[0]);
  } else if (Q.hull_dim == 2) {
    double per = polygon_perimeter(Q.verts);
    Vec asum{0, 0, 0};
    for (size_t i = 1; i + 1 < Q.verts.size(); ++i)
      asum += cross(Q.verts[i] - Q.verts[0], Q.verts[i + 1] - Q.verts[0]);
    double area = 0.5 * norm2(asum);
    m[1] = per / 4.0;
    m[2] = area / 2.0;
  } else if (Q.hull_dim == 3) {
    double surf = 0, vol = 0;
    std::map<std::pair<int, int>, std::vector<Vec>> edge_normals;
    for (const auto& t : Q.facets) {
      Vec n = cross(Q.verts[t[1]] - Q.verts[t[0]], Q.verts[t[2]] - Q.verts[t[0]]);
      surf += 0.5 * norm2(n);
      vol += dot(cross(Q.verts[t[0]], Q.verts[t[1]]), Q.verts[t[2]]) / 6.0;
      Vec un = normalized(n);
      for (int k = 0; k < 3; ++k) {
        auto key = std::minmax(t[k], t[(k + 1) % 3]);
        edge_normals[{key.first, key.second}].push_back(un);
      }
    }
    // integrated mean curvature: edges weighted by exterior dihedral angle.
    // Coplanar facet pairs give angle 0, so triangulation does not matter.
    double curv = 0;
    for (const auto& [e, ns] : edge_normals) {
      if (ns.size() != 2) continue;
      double ang = std::atan2(norm2(cross(ns[0], ns[1])), dot(ns[0], ns[1]));
      curv += norm2(Q.verts[e.second] - Q.verts[e.first]) * ang;
    }
    m[1] = curv / (4.0 * kPi);
    m[2] = surf / 4.0;
    m[3] = vol;
  }
  return m;
}

}  // namespace

double kappa(int i) {
  switch (i) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 / 3.0 * kPi;
    default:
      if (i < 0) fail(Errc::invalid_argument, "kappa: negative index");
      return std::pow(kPi, i / 2.0) / std::tgamma(i / 2.0 + 1.0);
  }
}

std::vector<double> mean_projections(const Hull& Q) {
  const int d = Q.dim;
  if (Q.offset == 0 && Q.hull_dim < d)
    fail(Errc::lower_dimensional,
         "mean_projections: lower-dimensional hull without outer parallel offset");
  std::vector<double> part = part_projections(Q);
  const double s = Q.offset;
  std::vector<double> m(d);
  for (int i = 1; i <= d; ++i) {
    double acc = 0;
    for (int j = 0; j <= i; ++j)
      acc += kBinom[i][j] * (kappa(i) / kappa(j)) * part[j] * std::pow(s, i - j);
    m[i - 1] = acc;
  }
  return m;
}

double mean_projection(const Hull& Q, int i) {
  const int d = Q.dim;
  if (i < 1 || i > d) fail(Errc::invalid_argument, "mean_projection: index out of range");
  if (Q.offset == 0 && Q.hull_dim < d) {
    if (i == d) return 0.0;  // degenerate hulls carry no volume
    fail(Errc::lower_dimensional,
         "mean_projection: lower-dimensional hull without outer parallel offset");
  }
  return mean_projections(Q)[i - 1];
}

double surface_area(const Hull& Q) {
  const int d = Q.dim;
  if (Q.offset == 0 && Q.hull_dim < d)
    fail(Errc::lower_dimensional, "surface_area: boundary measure of a lower-dimensional hull");
  std::vector<double> part = part_projections(Q);
  const double s = Q.offset;
  if (d == 2) {
    // perimeter of the polytope part plus the full turning circle
    double per = Q.hull_dim == 2   ? polygon_perimeter(Q.verts)
                 : Q.hull_dim == 1 ? 2.0 * norm2(Q.verts[1] - Q.verts[0])
                                   : 0.0;
    return per + 2.0 * kPi * s;
  }
  // d == 3: S(P + sB) = S(P) + 4 pi M_1(P) s + 4 pi s^2
  double base = 4.0 * part[2];
  return base + 4.0 * kPi * part[1] * s + 4.0 * kPi * s * s;
}

double hull_volume(const Hull& Q) { return mean_projection(Q, Q.dim); }

HullMetrics hull_metrics(const Hull& Q) {
  HullMetrics hm;
  hm.mean_projections = mean_projections(Q);
  hm.volume = hm.mean_projections.back();
  hm.surface_area = surface_area(Q);
  hm.inradius = inradius_hull(Q).radius;
  hm.circumradius = circumradius_hull(Q).radius;
  return hm;
}

std::vector<InequalityRecord> af_ball_lower_bound(const Hull& Q) {
  const int d = Q.dim;
  std::vector<double> m = mean_projections(Q);
  double vol = m[d - 1];
  std::vector<InequalityRecord> out;
  for (int i = 1; i < d; ++i) {
    double rhs = kappa(i) * std::pow(vol / kappa(d), double(i) / d);
    Digest dig;
    dig.add("af-ball-lower-bound").add(i).add(vol).add(m[i - 1]);
    out.push_back(make_record("af-ball-lower-bound.i" + std::to_string(i), m[i - 1], rhs, ">=",
                              Semantics::exact, kEpsRel * std::max(1.0, std::abs(rhs)),
                              dig.hex()));
  }
  return out;
}

double offset_polygon_area(const Hull& P, double t) {
  if (P.dim != 2 || P.offset != 0)
    fail(Errc::invalid_argument, "offset_polygon_area: plain 2D polytope expected");
  if (P.hull_dim == 0) return kPi * t * t;
  if (P.hull_dim == 1) return 2.0 * norm2(P.verts[1] - P.verts[0]) * t + kPi * t * t;
  const size_t n = P.verts.size();
  double area = polygon_area(P.verts);
  double strips = 0, sectors = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec& a = P.verts[i];
    const Vec& b = P.verts[(i + 1) % n];
    const Vec& c = P.verts[(i + 2) % n];
    strips += norm2(b - a) * t;
    Vec e1 = b - a, e2 = c - b;
    double turn = std::atan2(e1[0] * e2[1] - e1[1] * e2[0], dot(e1, e2));
    sectors += 0.5 * turn * t * t;
  }
  return area + strips + sectors;
}

namespace {

double point_segment_dist(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double len2 = norm2sq(ab);
  if (len2 <= 0) return norm2(p - a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm2(p - (a + t * ab));
}

double point_triangle_dist(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  // project onto the triangle plane, clamp to edges when outside
  Vec ab = b - a, ac = c - a, ap = p - a;
  double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return norm2(p - a);
  Vec bp = p - b;
  double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return norm2(p - b);
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return point_segment_dist(p, a, b);
  Vec cp = p - c;
  double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return norm2(p - c);
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return point_segment_dist(p, a, c);
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return point_segment_dist(p, b, c);
  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return norm2(p - (a + v * ab + w * ac));
}

struct FacetPlane {
  Vec n;
  double off;
};

}  // namespace

double distance_to_hull_part(const Hull& P, const Vec& x) {
  if (P.hull_dim == 0) return norm2(x - P.verts[0]);
  if (P.hull_dim == 1) return point_segment_dist(x, P.verts[0], P.verts[1]);
  if (P.dim == 2 || P.hull_dim == 2) {
    // polygon (in-plane for dim 3): inside test then edge distances
    if (P.dim == 2) {
      bool inside = true;
      const size_t n = P.verts.size();
      for (size_t i = 0; i < n && inside; ++i)
        if (cross2(P.verts[i], P.verts[(i + 1) % n], x) < 0) inside = false;
      if (inside) return 0.0;
      double best = 1e300;
      for (size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_dist(x, P.verts[i], P.verts[(i + 1) % n]));
      return best;
    }
    // planar polygon in 3D: fan-triangulate
    double best = 1e300;
    for (size_t i = 1; i + 1 < P.verts.size(); ++i)
      best = std::min(best, point_triangle_dist(x, P.verts[0], P.verts[i], P.verts[i + 1]));
    return best;
  }
  // full 3D polytope
  bool inside = true;
  for (const auto& f : P.facets) {
    Vec n = cross(P.verts[f[1]] - P.verts[f[0]], P.verts[f[2]] - P.verts[f[0]]);
    if (dot(n, x - P.verts[f[0]]) > 0) { inside = false; break; }
  }
  if (inside) return 0.0;
  double best = 1e300;
  for (const auto& f : P.facets)
    best = std::min(best, point_triangle_dist(x, P.verts[f[0]], P.verts[f[1]], P.verts[f[2]]));
  return best;
}

InequalityRecord steiner_check(const Hull& P, double t, const SteinerCheckOptions& opt) {
  if (!(t > 0)) fail(Errc::invalid_argument, "steiner_check: t must be positive");
  if (P.offset != 0) fail(Errc::invalid_argument, "steiner_check: plain polytope expected");
  const int d = P.dim;
  std::vector<double> part = part_projections(P);

  if (d == 2) {
    double poly = part[2] + kPi * part[1] * t + kPi * t * t;
    double direct = offset_polygon_area(P, t);
    Digest dig;
    dig.add("steiner.d2").add(t).add(part[1]).add(part[2]);
    return make_record("steiner.d2", direct, poly, "==", Semantics::exact,
                       kEpsRel * std::max(1.0, std::abs(poly)), dig.hex());
  }

  // d == 3: Monte Carlo volume of P + tB against the Steiner polynomial
  double poly = part[3] + 4.0 * part[2] * t + 2.0 * kPi * part[1] * t * t + kappa(3) * t * t * t;
  Vec lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& v : P.verts)
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], v[k] - t);
      hi[k] = std::max(hi[k], v[k] + t);
    }
  McResult mc = stratified_mc(lo, hi, 3, {20, 20, 20}, opt.mc_samples, opt.seed, opt.threads,
                              [&](const Vec& x) { return distance_to_hull_part(P, x) <= t; });
  Digest dig;
  dig.add("steiner.d3.mc").add(t).add(poly).add(double(opt.mc_samples)).add(double(opt.seed));
  InequalityRecord r =
      make_record("steiner.d3.mc", mc.value, poly, "==", Semantics::exact,
                  3.0 * mc.sigma + kEpsRel * std::max(1.0, std::abs(poly)), dig.hex());
  r.note = "monte-carlo 3sigma=" + std::to_string(3.0 * mc.sigma);
  return r;
}

}  // namespace sep

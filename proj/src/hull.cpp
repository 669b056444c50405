#include "seppack/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "seppack/body.hpp"
#include "seppack/packing.hpp"

namespace sep {

namespace {

double points_scale(const std::vector<Vec>& pts) {
  double s = 0;
  for (const auto& p : pts) s = std::max({s, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
  return std::max(s, 1.0);
}

// ---------------------------------------------------------------- 2D hull --
Hull hull_2d(std::vector<Vec> pts) {
  const double scale = points_scale(pts);
  const double tol = kEpsRel * scale;

  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Vec& a, const Vec& b) { return norm2(a - b) <= tol; }),
            pts.end());

  Hull h;
  h.dim = 2;
  if (pts.size() == 1) {
    h.hull_dim = 0;
    h.verts = pts;
    return h;
  }

  const double area_tol = tol * scale;
  auto chain = [&](const std::vector<Vec>& v, std::vector<Vec>& out) {
    for (const auto& p : v) {
      while (out.size() >= 2 && cross2(out[out.size() - 2], out.back(), p) <= area_tol)
        out.pop_back();
      out.push_back(p);
    }
  };
  std::vector<Vec> lower, upper;
  chain(pts, lower);
  std::vector<Vec> rev(pts.rbegin(), pts.rend());
  chain(rev, upper);

  if (lower.size() < 3 && upper.size() < 3) {  // collinear
    h.hull_dim = 1;
    h.verts = {pts.front(), pts.back()};
    return h;
  }
  h.hull_dim = 2;
  h.verts.assign(lower.begin(), lower.end() - 1);
  h.verts.insert(h.verts.end(), upper.begin(), upper.end() - 1);
  return h;
}

// ---------------------------------------------------------------- 3D hull --
struct Tri {
  std::array<int, 3> v;
  Vec n;       // outward, not normalized
  double off;  // n.x = off on the plane
  bool alive = true;
};

Hull hull_3d(const std::vector<Vec>& pts_in) {
  std::vector<Vec> pts = pts_in;
  const double scale = points_scale(pts);
  const double tol = kEpsRel * scale;

  Hull h;
  h.dim = 3;

  // greedy affine basis
  size_t i1 = 1;
  double best = -1;
  for (size_t i = 1; i < pts.size(); ++i) {
    double d = norm2(pts[i] - pts[0]);
    if (d > best) { best = d; i1 = i; }
  }
  if (best <= tol) {
    h.hull_dim = 0;
    h.verts = {pts[0]};
    return h;
  }
  Vec e0 = pts[i1] - pts[0];
  size_t i2 = 0;
  best = -1;
  for (size_t i = 0; i < pts.size(); ++i) {
    double d = norm2(cross(e0, pts[i] - pts[0]));
    if (d > best) { best = d; i2 = i; }
  }
  if (best <= tol * norm2(e0)) {  // collinear
    h.hull_dim = 1;
    double lo = 0, hi = 0;
    size_t a = 0, b = 0;
    Vec dir = normalized(e0);
    for (size_t i = 0; i < pts.size(); ++i) {
      double t = dot(pts[i] - pts[0], dir);
      if (t < lo) { lo = t; a = i; }
      if (t > hi) { hi = t; b = i; }
    }
    h.verts = {pts[a], pts[b]};
    return h;
  }
  Vec nrm = normalized(cross(e0, pts[i2] - pts[0]));
  size_t i3 = 0;
  best = -1;
  for (size_t i = 0; i < pts.size(); ++i) {
    double d = std::abs(dot(nrm, pts[i] - pts[0]));
    if (d > best) { best = d; i3 = i; }
  }
  if (best <= tol) {  // coplanar: 2D hull in the plane
    Vec u = normalized(e0);
    Vec v = cross(nrm, u);
    std::vector<Vec> flat;
    flat.reserve(pts.size());
    for (const auto& p : pts) flat.push_back(vec2(dot(p - pts[0], u), dot(p - pts[0], v)));
    Hull f = hull_2d(flat);
    h.hull_dim = f.hull_dim;
    h.plane_normal = nrm;
    for (const auto& q : f.verts) h.verts.push_back(pts[0] + q[0] * u + q[1] * v);
    return h;
  }

  // incremental hull from the initial tetrahedron
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::array<size_t, 4> seed{0, i1, i2, i3};
  // move seed points to the front, keep the rest in input order
  std::vector<int> rest;
  for (int i : order)
    if (std::find(seed.begin(), seed.end(), static_cast<size_t>(i)) == seed.end())
      rest.push_back(i);

  std::vector<Tri> tris;
  auto add_tri = [&](int a, int b, int c, const Vec& inside) {
    Tri t;
    t.v = {a, b, c};
    t.n = cross(pts[b] - pts[a], pts[c] - pts[a]);
    if (dot(t.n, inside - pts[a]) > 0) {
      std::swap(t.v[1], t.v[2]);
      t.n = -t.n;
    }
    t.off = dot(t.n, pts[t.v[0]]);
    tris.push_back(t);
  };
  Vec inside = 0.25 * (pts[0] + pts[i1] + pts[i2] + pts[i3]);
  add_tri(0, (int)i1, (int)i2, inside);
  add_tri(0, (int)i1, (int)i3, inside);
  add_tri(0, (int)i2, (int)i3, inside);
  add_tri((int)i1, (int)i2, (int)i3, inside);

  for (int pi : rest) {
    const Vec& p = pts[pi];
    // visible faces
    std::vector<int> vis;
    for (size_t f = 0; f < tris.size(); ++f) {
      if (!tris[f].alive) continue;
      if (dot(tris[f].n, p) - tris[f].off > tol * norm2(tris[f].n)) vis.push_back((int)f);
    }
    if (vis.empty()) continue;
    // horizon = edges shared by exactly one visible face
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : vis)
      for (int k = 0; k < 3; ++k) {
        int a = tris[f].v[k], b = tris[f].v[(k + 1) % 3];
        auto key = std::minmax(a, b);
        edge_count[{key.first, key.second}]++;
      }
    std::vector<std::pair<int, int>> horizon;  // directed as in the visible face
    for (int f : vis)
      for (int k = 0; k < 3; ++k) {
        int a = tris[f].v[k], b = tris[f].v[(k + 1) % 3];
        auto key = std::minmax(a, b);
        if (edge_count[{key.first, key.second}] == 1) horizon.push_back({a, b});
      }
    for (int f : vis) tris[f].alive = false;
    for (auto [a, b] : horizon) {
      Tri t;
      t.v = {a, b, pi};
      t.n = cross(pts[b] - pts[a], pts[pi] - pts[a]);
      t.off = dot(t.n, pts[a]);
      if (dot(t.n, inside) - t.off > 0) {
        std::swap(t.v[0], t.v[1]);
        t.n = -t.n;
        t.off = dot(t.n, pts[t.v[0]]);
      }
      tris.push_back(t);
    }
  }

  // compact vertices and facets
  std::vector<int> remap(pts.size(), -1);
  h.hull_dim = 3;
  for (const auto& t : tris) {
    if (!t.alive) continue;
    std::array<int, 3> f{};
    for (int k = 0; k < 3; ++k) {
      int vi = t.v[k];
      if (remap[vi] < 0) {
        remap[vi] = (int)h.verts.size();
        h.verts.push_back(pts[vi]);
      }
      f[k] = remap[vi];
    }
    h.facets.push_back(f);
  }
  return h;
}

// -------------------------------------------------------- enclosing balls --
BallResult ball_from_basis(const std::vector<Vec>& b) {
  BallResult r;
  if (b.empty()) return {vec3(0, 0, 0), 0};
  if (b.size() == 1) return {b[0], 0};
  // circumsphere within the affine hull of the basis: solve the Gram system
  const int k = (int)b.size() - 1;
  double G[3][3] = {{0}}, rhs[3] = {0};
  Vec v[3];
  for (int i = 0; i < k; ++i) v[i] = b[i + 1] - b[0];
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) G[i][j] = dot(v[i], v[j]);
    rhs[i] = 0.5 * dot(v[i], v[i]);
  }
  // gaussian elimination (k <= 3)
  int piv[3] = {0, 1, 2};
  for (int c = 0; c < k; ++c) {
    int best = c;
    for (int r2 = c + 1; r2 < k; ++r2)
      if (std::abs(G[r2][c]) > std::abs(G[best][c])) best = r2;
    std::swap(G[c], G[best]);
    std::swap(rhs[c], rhs[best]);
    (void)piv;
    if (std::abs(G[c][c]) < 1e-14) return {vec3(0, 0, 0), -1};  // degenerate basis
    for (int r2 = c + 1; r2 < k; ++r2) {
      double f = G[r2][c] / G[c][c];
      for (int c2 = c; c2 < k; ++c2) G[r2][c2] -= f * G[c][c2];
      rhs[r2] -= f * rhs[c];
    }
  }
  double lam[3] = {0, 0, 0};
  for (int r2 = k - 1; r2 >= 0; --r2) {
    double s = rhs[r2];
    for (int c2 = r2 + 1; c2 < k; ++c2) s -= G[r2][c2] * lam[c2];
    lam[r2] = s / G[r2][r2];
  }
  Vec c = b[0];
  for (int i = 0; i < k; ++i) c += lam[i] * v[i];
  r.center = c;
  r.radius = norm2(c - b[0]);
  return r;
}

BallResult welzl(std::vector<Vec>& pts, std::vector<Vec>& basis, size_t n, int dim) {
  if (n == 0 || (int)basis.size() == dim + 1) return ball_from_basis(basis);
  BallResult d = welzl(pts, basis, n - 1, dim);
  const Vec& p = pts[n - 1];
  double scale = std::max(points_scale(pts), d.radius);
  if (d.radius >= 0 && norm2(p - d.center) <= d.radius + kEpsRel * scale) return d;
  basis.push_back(p);
  BallResult r = welzl(pts, basis, n - 1, dim);
  basis.pop_back();
  if (r.radius < 0) return d;  // degenerate basis fallback
  return r;
}

}  // namespace

Hull convex_hull(const std::vector<Vec>& points, int dim) {
  if (points.empty()) fail(Errc::invalid_argument, "convex_hull: empty point set");
  if (dim == 2) {
    std::vector<Vec> p = points;
    for (auto& q : p) q[2] = 0;
    return hull_2d(std::move(p));
  }
  if (dim == 3) return hull_3d(points);
  fail(Errc::invalid_argument, "convex_hull: dim must be 2 or 3");
}

Hull hull_of_packing(const Packing& P) {
  const Body& C = P.body;
  if (C.is_ball()) {
    Hull h = convex_hull(P.centers, C.dim());
    h.offset = C.radius();
    return h;
  }
  std::vector<Vec> pts;
  pts.reserve(P.centers.size() * C.vertices().size());
  for (const auto& c : P.centers)
    for (const auto& v : C.vertices()) pts.push_back(c + v);
  return convex_hull(pts, C.dim());
}

BallResult min_enclosing_ball(const std::vector<Vec>& points, int dim) {
  if (points.empty()) fail(Errc::invalid_argument, "min_enclosing_ball: empty point set");
  std::vector<Vec> pts = points;
  // deterministic shuffle
  Rng rng(0x5eb7a11dULL);
  for (size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
  std::vector<Vec> basis;
  BallResult r = welzl(pts, basis, pts.size(), dim);
  if (r.radius < 0) r.radius = 0;
  return r;
}

BallResult circumradius_hull(const Hull& Q) {
  BallResult r = min_enclosing_ball(Q.verts, Q.dim);
  r.radius += Q.offset;
  return r;
}

double hull_scale(const Hull& Q) { return points_scale(Q.verts) + Q.offset; }

// ------------------------------------------------------------- Seidel LP --
namespace {

std::optional<std::vector<double>> lp_rec(std::vector<LinCon>& cons, const std::vector<double>& c,
                                          double box, double eps, Rng& rng) {
  const size_t n = c.size();
  if (n == 1) {
    double lo = -box, hi = box;
    for (const auto& con : cons) {
      double a = con.a[0];
      if (a > eps) hi = std::min(hi, con.b / a);
      else if (a < -eps) lo = std::max(lo, con.b / a);
      else if (con.b < -eps) return std::nullopt;
    }
    if (lo > hi + eps) return std::nullopt;
    if (lo > hi) hi = lo = 0.5 * (lo + hi);
    return std::vector<double>{c[0] >= 0 ? hi : lo};
  }

  std::vector<double> x(n);
  for (size_t j = 0; j < n; ++j) x[j] = c[j] >= 0 ? box : -box;

  // deterministic random order
  std::vector<size_t> order(cons.size());
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<size_t> seen;
  for (size_t oi = 0; oi < order.size(); ++oi) {
    const LinCon& v = cons[order[oi]];
    double lhs = 0;
    for (size_t j = 0; j < n; ++j) lhs += v.a[j] * x[j];
    if (lhs <= v.b + eps) {
      seen.push_back(order[oi]);
      continue;
    }
    // the violated constraint is tight at the optimum: eliminate one variable
    size_t k = 0;
    for (size_t j = 1; j < n; ++j)
      if (std::abs(v.a[j]) > std::abs(v.a[k])) k = j;
    if (std::abs(v.a[k]) <= eps) {
      if (v.b < -eps) return std::nullopt;
      seen.push_back(order[oi]);
      continue;
    }
    // x_k = (v.b - sum_{j!=k} v.a[j] x_j) / v.a[k]
    auto project_con = [&](const LinCon& w) {
      LinCon s;
      s.a.resize(n - 1);
      double f = w.a[k] / v.a[k];
      size_t t = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        s.a[t++] = w.a[j] - f * v.a[j];
      }
      s.b = w.b - f * v.b;
      return s;
    };
    std::vector<LinCon> sub;
    sub.reserve(seen.size() + 2);
    for (size_t si : seen) sub.push_back(project_con(cons[si]));
    // box rows of the eliminated variable
    LinCon up, dn;
    up.a.assign(n, 0);
    up.a[k] = 1;
    up.b = box;
    dn.a.assign(n, 0);
    dn.a[k] = -1;
    dn.b = box;
    sub.push_back(project_con(up));
    sub.push_back(project_con(dn));

    std::vector<double> subc(n - 1);
    {
      double f = c[k] / v.a[k];
      size_t t = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        subc[t++] = c[j] - f * v.a[j];
      }
    }
    auto sol = lp_rec(sub, subc, box, eps, rng);
    if (!sol) return std::nullopt;
    size_t t = 0;
    double xk = v.b;
    for (size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      x[j] = (*sol)[t++];
      xk -= v.a[j] * x[j];
    }
    x[k] = xk / v.a[k];
    seen.push_back(order[oi]);
  }
  return x;
}

}  // namespace

std::optional<std::vector<double>> lp_maximize(std::vector<LinCon> cons,
                                               const std::vector<double>& obj, double box,
                                               double eps) {
  Rng rng(0x1bd11bdaULL);
  return lp_rec(cons, obj, box, eps, rng);
}

BallResult inradius_hull(const Hull& Q) {
  BallResult r;
  if (Q.hull_dim == 0) {
    r.center = Q.verts[0];
    r.radius = Q.offset;
    return r;
  }
  if (Q.hull_dim == 1) {
    r.center = 0.5 * (Q.verts[0] + Q.verts[1]);
    r.radius = Q.offset;
    return r;
  }
  if (Q.dim == 3 && Q.hull_dim == 2) {
    Vec c{0, 0, 0};
    for (const auto& v : Q.verts) c += (1.0 / Q.verts.size()) * v;
    r.center = c;
    r.radius = Q.offset;
    return r;
  }

  const double scale = hull_scale(Q);
  const double eps = 1e-12 * scale;
  std::vector<LinCon> cons;
  const int d = Q.dim;
  if (d == 2) {
    const size_t n = Q.verts.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec& p = Q.verts[i];
      const Vec& q = Q.verts[(i + 1) % n];
      Vec e = q - p;
      Vec nr = normalized(vec2(e[1], -e[0]));
      cons.push_back({{nr[0], nr[1], 1.0}, dot(nr, p)});
    }
  } else {
    for (const auto& f : Q.facets) {
      Vec nr = cross(Q.verts[f[1]] - Q.verts[f[0]], Q.verts[f[2]] - Q.verts[f[0]]);
      double ln = norm2(nr);
      if (ln <= eps * scale) continue;
      nr = (1.0 / ln) * nr;
      cons.push_back({{nr[0], nr[1], nr[2], 1.0}, dot(nr, Q.verts[f[0]])});
    }
  }
  std::vector<double> obj(d + 1, 0.0);
  obj[d] = 1.0;
  auto sol = lp_maximize(std::move(cons), obj, 4.0 * scale, eps);
  if (!sol) fail(Errc::internal, "inradius_hull: infeasible Chebyshev program");
  r.center = d == 2 ? vec2((*sol)[0], (*sol)[1]) : vec3((*sol)[0], (*sol)[1], (*sol)[2]);
  r.radius = (*sol)[d] + Q.offset;
  return r;
}

double polygon_area(const std::vector<Vec>& v) {
  double a = 0;
  for (size_t i = 0, n = v.size(); i < n; ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<Vec>& v) {
  double s = 0;
  for (size_t i = 0, n = v.size(); i < n; ++i) s += norm2(v[(i + 1) % n] - v[i]);
  return s;
}

}  // namespace sep

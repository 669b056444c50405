#include "seppack/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "seppack/mc.hpp"

namespace sep {

namespace {

constexpr double kHexDiskDensity = 0.90689968211710892;  // pi / sqrt(12)
constexpr double kGridDiskDensity = 0.78539816339744831;  // pi / 4

}  // namespace

const std::vector<DensityTableEntry>& builtin_density_table() {
  static const std::vector<DensityTableEntry> table = {
      {"disk", 1.0, 3.0, kHexDiskDensity, kHexDiskDensity,
       "hexagonal lattice attains the planar disk packing density (Thue, Fejes Toth)"},
      {"disk", 3.0, 1e300, kGridDiskDensity, kHexDiskDensity,
       "square grid of touching disks is totally separable; upper bound inherited from the "
       "unconstrained density"},
      {"square", 1.0, 1e300, 1.0, 1.0, "axis-aligned tiling of squares is totally separable"},
  };
  return table;
}

std::vector<DensityTableEntry> load_density_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "density table: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("density table: ") + e.what());
  }
  std::vector<DensityTableEntry> out;
  for (const auto& e : j.at("entries")) {
    DensityTableEntry t;
    t.body = e.at("body").get<std::string>();
    t.rho_min = e.at("rho_min").get<double>();
    t.rho_max = e.value("rho_max", 1e300);
    t.lower = e.at("lower").get<double>();
    t.upper = e.at("upper").get<double>();
    t.citation = e.value("citation", "");
    if (!(t.lower > 0) || t.lower > t.upper || t.upper > 1.0)
      fail(Errc::parse_error, "density table: entry bounds out of range");
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::string> registered_body_name(const Body& C) {
  if (C.is_ball() && C.dim() == 2) return "disk";
  if (C.kind() == BodyKind::polygon2 && C.vertices().size() == 4) {
    // axis-aligned square (+-a, +-a) in any vertex order
    double a = std::abs(C.vertices()[0][0]);
    if (a <= 0) return std::nullopt;
    double tol = 1e-9 * a;
    for (const auto& v : C.vertices())
      if (std::abs(std::abs(v[0]) - a) > tol || std::abs(std::abs(v[1]) - a) > tol)
        return std::nullopt;
    return "square";
  }
  return std::nullopt;
}

DensityEstimate reference_density(const Body& C, double rho,
                                  const std::vector<DensityTableEntry>* table) {
  const auto& tab = table ? *table : builtin_density_table();
  if (auto name = registered_body_name(C)) {
    for (const auto& e : tab)
      if (e.body == *name && rho >= e.rho_min && rho < e.rho_max)
        return {e.lower, e.upper, DensitySource::reference};
  }
  double lb = std::min(universal_density_bound(C.dim()), 1.0);
  return {lb, 1.0, DensitySource::universal_bound};
}

double universal_density_bound(int d) {
  if (d < 2) fail(Errc::invalid_argument, "universal_density_bound: d >= 2 required");
  double dd = d;
  double n = dd * (dd + 1) / 2;
  double ln_binom = std::lgamma(n + 1) - std::lgamma(dd + 1) - std::lgamma(n - dd + 1);
  double ln = 0.5 * dd * std::log(dd + 1) + 0.5 * dd * std::log(kPi) +
              std::lgamma(dd / 2 + 1) - 1.5 * dd * std::log(2.0) - 0.5 * ln_binom;
  return std::exp(ln);
}

// ---------------------------------------------------------------------------
// exact union area of equal disks: per circle, collect the angular intervals
// covered by the other disks, merge, and integrate the free arcs with
// Green's theorem. Holes are handled automatically: every free arc is
// traversed counterclockwise in its own circle, which orients outer
// boundaries CCW and hole boundaries CW.
// ---------------------------------------------------------------------------

double disk_union_area(const std::vector<Vec>& centers_in, double radius) {
  if (!(radius > 0)) fail(Errc::invalid_argument, "disk_union_area: radius must be positive");
  std::vector<Vec> centers;
  double scale = radius;
  for (const auto& c : centers_in) scale = std::max({scale, std::abs(c[0]), std::abs(c[1])});
  const double tol = 1e-12 * scale;
  for (const auto& c : centers_in) {  // drop exact duplicates
    bool dup = false;
    for (const auto& d : centers)
      if (norm2(c - d) <= tol) { dup = true; break; }
    if (!dup) centers.push_back(c);
  }

  const size_t n = centers.size();
  double area = 0;
  for (size_t i = 0; i < n; ++i) {
    // covered angular intervals of circle i, unrolled mod 2pi
    std::vector<std::pair<double, double>> cov;
    bool full = false;
    for (size_t j = 0; j < n && !full; ++j) {
      if (j == i) continue;
      Vec d = centers[j] - centers[i];
      double dist = norm2(d);
      if (dist >= 2.0 * radius) continue;  // disjoint or tangent: no arc covered
      if (dist <= tol) { full = true; break; }
      double half = std::acos(std::clamp(dist / (2.0 * radius), -1.0, 1.0));
      double mid = std::atan2(d[1], d[0]);
      double a = mid - half, b = mid + half;
      // normalize start into [0, 2pi)
      double start = std::fmod(a, 2.0 * kPi);
      if (start < 0) start += 2.0 * kPi;
      double end = start + (b - a);
      if (end > 2.0 * kPi) {
        cov.push_back({start, 2.0 * kPi});
        cov.push_back({0.0, end - 2.0 * kPi});
      } else {
        cov.push_back({start, end});
      }
    }
    if (full) continue;

    std::sort(cov.begin(), cov.end());
    std::vector<std::pair<double, double>> free_arcs;
    double cursor = 0.0;
    for (const auto& [a, b] : cov) {
      if (a > cursor) free_arcs.push_back({cursor, a});
      cursor = std::max(cursor, b);
    }
    if (cursor < 2.0 * kPi) free_arcs.push_back({cursor, 2.0 * kPi});

    const Vec& c = centers[i];
    for (const auto& [a, b] : free_arcs) {
      if (b - a <= 0) continue;
      area += 0.5 * (radius * radius * (b - a) + c[0] * radius * (std::sin(b) - std::sin(a)) +
                     c[1] * radius * (std::cos(a) - std::cos(b)));
    }
  }
  return area;
}

UnionVolume union_volume(const Packing& P, double inflation, UnionVolumeMethod method,
                         const UnionVolumeOptions& opt) {
  if (!(inflation > 0)) fail(Errc::invalid_argument, "union_volume: inflation must be positive");
  const Body& C = P.body;

  if (method == UnionVolumeMethod::exact_disk) {
    if (!(C.is_ball() && C.dim() == 2))
      fail(Errc::unsupported_method, "union_volume: exact-disk requires a 2D ball body");
    return {disk_union_area(P.centers, inflation * C.radius()), 0.0};
  }

  const int d = P.dim();
  const double reach = inflation * C.circumradius();
  Vec lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& c : P.centers)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c[k] - reach);
      hi[k] = std::max(hi[k], c[k] + reach);
    }
  if (d == 2) lo[2] = hi[2] = 0;

  auto inside = [&](const Vec& x) {
    for (const auto& c : P.centers)
      if (gauge_norm(C, x - c) <= inflation) return true;
    return false;
  };
  std::array<int, 3> strata =
      d == 2 ? std::array<int, 3>{opt.mc_strata[0], opt.mc_strata[1], 1}
             : std::array<int, 3>{opt.mc_strata[2], opt.mc_strata[2], opt.mc_strata[2]};
  McResult mc = stratified_mc(lo, hi, d, strata, opt.mc_samples, opt.seed, opt.threads, inside);
  return {mc.value, 3.0 * mc.sigma};
}

DensityEstimate torus_density(const TorusCell& cell, const Packing& P,
                              const TorusDensityOptions& opt) {
  const int d = P.dim();
  if (cell.dim != d) fail(Errc::invalid_argument, "torus_density: cell/packing dimension mismatch");
  for (int k = 0; k < d; ++k)
    if (!(cell.half_widths[k] > 0))
      fail(Errc::invalid_argument, "torus_density: cell half-widths must be positive");

  const double RC = P.body.circumradius();
  double min_half = cell.half_widths[0];
  for (int k = 1; k < d; ++k) min_half = std::min(min_half, cell.half_widths[k]);
  // the 3^d unfolding must contain every sub-packing ball (rho >= 3) or at
  // least the full overlap interaction range (rho < 3, where separability is
  // vacuous for a valid packing)
  const double needed = P.rho < 3.0 ? RC : P.rho * RC;
  if (!(min_half >= needed * (1.0 - kEpsRel)))
    fail(Errc::insufficient_unfolding,
         "torus_density: cell half-width " + std::to_string(min_half) +
             " too small for the required unfolding radius " + std::to_string(needed));

  // wrap centers into the cell
  std::vector<Vec> wrapped = P.centers;
  for (auto& c : wrapped)
    for (int k = 0; k < d; ++k) {
      double w = 2.0 * cell.half_widths[k];
      c[k] = c[k] - w * std::floor((c[k] + cell.half_widths[k]) / w);
    }

  // unfold the 3^d neighborhood, central copy first
  std::vector<Vec> unfolded = wrapped;
  std::array<int, 3> span{1, 1, d == 3 ? 1 : 0};
  for (int sx = -span[0]; sx <= span[0]; ++sx)
    for (int sy = -span[1]; sy <= span[1]; ++sy)
      for (int sz = -span[2]; sz <= span[2]; ++sz) {
        if (sx == 0 && sy == 0 && sz == 0) continue;
        Vec shift{2 * cell.half_widths[0] * sx, 2 * cell.half_widths[1] * sy,
                  d == 3 ? 2 * cell.half_widths[2] * sz : 0};
        for (const auto& c : wrapped) unfolded.push_back(c + shift);
      }

  Packing U(P.body, P.rho, unfolded);
  PackingCheck pc = check_packing(U, opt.sep.eps_rel);
  if (!pc.ok)
    fail(Errc::unverified_packing, "torus_density: periodic extension violates the packing "
                                   "condition (pair " + std::to_string(pc.violations[0].i) + "," +
                                       std::to_string(pc.violations[0].j) + ")");

  if (P.rho >= 3.0) {
    const int n = P.size();
    std::map<std::vector<int>, bool> memo;
    for (int i = 0; i < n; ++i) {
      std::vector<int> sub = rho_subpacking(U, i, opt.sep.eps_rel);
      if (sub.size() < 2) continue;
      auto it = memo.find(sub);
      bool ok;
      if (it != memo.end()) {
        ok = it->second;
      } else {
        ok = totally_separable(U, sub, opt.sep).separable;
        memo[sub] = ok;
      }
      if (!ok)
        fail(Errc::unverified_packing,
             "torus_density: periodic extension is not rho-separable (center " +
                 std::to_string(i) + ")");
    }
  }

  DensityEstimate e;
  e.lower = P.size() * body_volume(P.body) / cell.volume();
  e.upper = 1.0;
  e.source = DensitySource::certified_construction;
  if (!(e.lower > 0) || e.lower > 1.0 + kEpsRel)
    fail(Errc::invalid_argument, "torus_density: degenerate density value");
  e.lower = std::min(e.lower, 1.0);
  return e;
}

}  // namespace sep

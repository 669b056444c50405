#include "seppack/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seppack/hull.hpp"
#include "seppack/quermass.hpp"

namespace sep {

namespace {

// ------------------------------------------------------------- lattices --

struct LatticeBasis {
  std::vector<Vec> vecs;  // d basis vectors
};

LatticeBasis lattice_basis(const Body& C, double rho) {
  // grid for rho >= 3 (totally separable by axis hyperplanes), densest-known
  // lattice otherwise; both at unit Euclidean spacing, scaled afterwards
  LatticeBasis b;
  if (C.dim() == 2) {
    if (rho >= 3.0)
      b.vecs = {vec2(1, 0), vec2(0, 1)};
    else
      b.vecs = {vec2(1, 0), vec2(0.5, std::sqrt(3.0) / 2.0)};
  } else {
    if (rho >= 3.0)
      b.vecs = {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
    else {
      double h = 1.0 / std::sqrt(2.0);
      b.vecs = {vec3(0, h, h), vec3(h, 0, h), vec3(h, h, 0)};
    }
  }
  return b;
}

// scale factor making the minimum gauge distance over short lattice vectors
// exactly 2
double lattice_scale(const Body& C, const LatticeBasis& basis) {
  const int d = C.dim();
  double gmin = 1e300;
  int r = 2;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      for (int k = (d == 3 ? -r : 0); k <= (d == 3 ? r : 0); ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        Vec v = double(i) * basis.vecs[0] + double(j) * basis.vecs[1];
        if (d == 3) v += double(k) * basis.vecs[2];
        gmin = std::min(gmin, gauge_norm(C, v));
      }
  return 2.0 / gmin;
}

std::vector<Vec> lattice_block(const Body& C, const LatticeBasis& basis, double scale, int range,
                               const Vec& offset) {
  const int d = C.dim();
  std::vector<Vec> pts;
  for (int i = -range; i <= range; ++i)
    for (int j = -range; j <= range; ++j)
      for (int k = (d == 3 ? -range : 0); k <= (d == 3 ? range : 0); ++k) {
        Vec v = double(i) * basis.vecs[0] + double(j) * basis.vecs[1];
        if (d == 3) v += double(k) * basis.vecs[2];
        pts.push_back(scale * v + offset);
      }
  return pts;
}

bool lex_less(const Vec& a, const Vec& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  if (a[1] != b[1]) return a[1] < b[1];
  return a[2] < b[2];
}

// crop to n points nearest `center` in gauge distance, lexicographic ties
std::vector<Vec> crop_points(const Body& C, std::vector<Vec> pts, const Vec& center, int n) {
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    double ga = gauge_norm(C, a - center), gb = gauge_norm(C, b - center);
    if (std::abs(ga - gb) > 1e-12 * std::max(1.0, ga + gb)) return ga < gb;
    return lex_less(a, b);
  });
  pts.resize(n);
  return pts;
}

double objective_value(const Body& C, double rho, const std::vector<Vec>& centers, int i) {
  (void)rho;
  Hull h;
  if (C.is_ball()) {
    h = convex_hull(centers, C.dim());
    h.offset = C.radius();
  } else {
    std::vector<Vec> pts;
    pts.reserve(centers.size() * C.vertices().size());
    for (const auto& c : centers)
      for (const auto& v : C.vertices()) pts.push_back(c + v);
    h = convex_hull(pts, C.dim());
  }
  return mean_projection(h, i);
}

// ------------------------------------ incremental separability screening --

struct SepScreen {
  Packing& work;  // centers mutated in place by the caller
  SepOptions opts;
  std::map<std::pair<int, int>, SeparationCertificate> cache;

  bool subset_ok(const std::vector<int>& subset,
                 std::map<std::pair<int, int>, SeparationCertificate>& staged) {
    for (size_t a = 0; a < subset.size(); ++a)
      for (size_t b = a + 1; b < subset.size(); ++b) {
        std::pair<int, int> key{subset[a], subset[b]};
        auto st = staged.find(key);
        if (st != staged.end() && verify_certificate(work, subset, st->second, opts.eps_rel))
          continue;
        auto it = cache.find(key);
        if (it != cache.end() && verify_certificate(work, subset, it->second, opts.eps_rel))
          continue;
        const SeparationCertificate* hint = it != cache.end() ? &it->second : nullptr;
        PairSepResult r = pair_separable(work, subset, key.first, key.second, opts, hint);
        if (!r.feasible) return false;
        staged[key] = std::move(*r.cert);
      }
    return true;
  }

  // verify every sub-packing the listed centers participate in (post-move
  // positions); staged certificates are committed by the caller on accept
  bool moved_ok(const std::vector<int>& moved,
                std::map<std::pair<int, int>, SeparationCertificate>& staged) {
    std::map<std::vector<int>, bool> seen;
    for (int k : moved) {
      std::vector<int> owners = rho_subpacking(work, k, opts.eps_rel);
      owners.push_back(k);
      for (int i : owners) {
        std::vector<int> sub = rho_subpacking(work, i, opts.eps_rel);
        if (sub.size() < 2) continue;
        auto [it, fresh] = seen.try_emplace(sub, false);
        if (!fresh) continue;
        if (!subset_ok(sub, staged)) return false;
        it->second = true;
      }
    }
    return true;
  }

  void commit(std::map<std::pair<int, int>, SeparationCertificate>& staged) {
    for (auto& [k, v] : staged) cache[k] = std::move(v);
  }
};

double min_pairwise_gauge(const Packing& P) {
  double g = 1e300;
  for (int a = 0; a < P.size(); ++a)
    for (int b = a + 1; b < P.size(); ++b)
      g = std::min(g, gauge_norm(P.body, P.centers[b] - P.centers[a]));
  return g;
}

struct ChainResult {
  std::vector<Vec> best;
  double best_obj = 0;
  std::vector<TracePoint> trace;
};

ChainResult run_chain(const Body& C, double rho, int i, const std::vector<Vec>& init,
                      const AnnealSchedule& sched, const MinimizeOptions& opts,
                      std::uint64_t seed) {
  const int n = (int)init.size();
  const int moves = sched.moves_per_epoch > 0 ? sched.moves_per_epoch : 200 * n;
  const bool check_sep = opts.force_separability_checks || rho >= 3.0;
  const double rC = C.inradius();

  Packing work(C, rho, init);
  SepScreen screen{work, opts.sep, {}};
  Rng rng(seed);

  double obj = objective_value(C, rho, work.centers, i);
  std::vector<Vec> best = work.centers;
  double best_obj = obj;
  double T0 = sched.initial_temperature > 0 ? sched.initial_temperature : 0.05 * obj;
  double T = T0;
  const double tol = opts.sep.eps_rel;

  ChainResult res;
  bool aborted = false;
  for (int epoch = 0; epoch < sched.epochs && !aborted; ++epoch) {
    for (int m = 0; m < moves; ++m) {
      double pick = rng.uniform();
      std::vector<Vec> saved;
      std::vector<int> moved;
      bool valid = true;

      if (pick < 0.6 || n < 2) {
        // gaussian single-center move, step annealed with the temperature
        int k = (int)rng.below(n);
        double sigma =
            std::max(sched.move_scale * rC * std::sqrt(std::max(T / T0, 1e-12)), 1e-8 * rC);
        Vec delta = vec3(sigma * rng.normal(), sigma * rng.normal(),
                         C.dim() == 3 ? sigma * rng.normal() : 0.0);
        saved = {work.centers[k]};
        moved = {k};
        work.centers[k] += delta;
        for (int t = 0; t < n && valid; ++t)
          if (t != k && gauge_norm(C, work.centers[t] - work.centers[k]) < 2.0 * (1.0 - tol))
            valid = false;
      } else if (pick < 0.8) {
        // relocate the outermost center into a pocket touching a random one
        Vec centroid{0, 0, 0};
        for (const auto& c : work.centers) centroid += (1.0 / n) * c;
        int k = 0;
        double worst = -1;
        for (int t = 0; t < n; ++t) {
          double g = gauge_norm(C, work.centers[t] - centroid);
          if (g > worst) { worst = g; k = t; }
        }
        int j = (int)rng.below(n - 1);
        if (j >= k) ++j;
        Vec dir = vec3(rng.normal(), rng.normal(), C.dim() == 3 ? rng.normal() : 0.0);
        double g = gauge_norm(C, dir);
        if (g <= 0) {
          valid = false;
          saved = {work.centers[k]};
          moved = {k};
        } else {
          saved = {work.centers[k]};
          moved = {k};
          work.centers[k] = work.centers[j] + (2.0 / g) * dir;
          for (int t = 0; t < n && valid; ++t)
            if (t != k && gauge_norm(C, work.centers[t] - work.centers[k]) < 2.0 * (1.0 - tol))
              valid = false;
        }
      } else {
        // global contraction toward the centroid
        double eps = std::exp(rng.uniform(std::log(1e-9), std::log(0.05)));
        double gmin = min_pairwise_gauge(work);
        if (gmin * (1.0 - eps) < 2.0 * (1.0 - tol)) {
          valid = false;
        } else {
          Vec centroid{0, 0, 0};
          for (const auto& c : work.centers) centroid += (1.0 / n) * c;
          saved = work.centers;
          moved.resize(n);
          for (int t = 0; t < n; ++t) {
            moved[t] = t;
            work.centers[t] = centroid + (1.0 - eps) * (work.centers[t] - centroid);
          }
        }
      }

      std::map<std::pair<int, int>, SeparationCertificate> staged;
      if (valid && check_sep) {
        try {
          valid = screen.moved_ok(moved, staged);
        } catch (const Error& e) {
          if (e.code != Errc::capacity_exceeded) throw;
          // 3D capacity limit: stop the chain, keep the partial trace
          valid = false;
          aborted = true;
        }
      }
      if (aborted) {
        if (!saved.empty()) {
          if (saved.size() == 1)
            work.centers[moved[0]] = saved[0];
          else
            work.centers = saved;
        }
        break;
      }

      if (valid) {
        double cand = objective_value(C, rho, work.centers, i);
        double delta = cand - obj;
        if (delta <= 0 || rng.uniform() < std::exp(-delta / std::max(T, 1e-300))) {
          obj = cand;
          screen.commit(staged);
          if (obj < best_obj) {
            best_obj = obj;
            best = work.centers;
          }
        } else {
          valid = false;
        }
      }
      if (!valid && !saved.empty()) {
        if (saved.size() == 1)
          work.centers[moved[0]] = saved[0];
        else
          work.centers = saved;
      }
    }
    res.trace.push_back({epoch, best_obj, obj, T});
    T *= sched.cooling_factor;
  }
  res.best = std::move(best);
  res.best_obj = best_obj;
  return res;
}

}  // namespace

InitialShape initial_shape_from_name(const std::string& name) {
  if (name == "round") return InitialShape::round;
  if (name == "sausage") return InitialShape::sausage;
  if (name == "grid") return InitialShape::grid;
  fail(Errc::invalid_argument, "unknown shape: " + name);
}

std::string initial_shape_name(InitialShape s) {
  switch (s) {
    case InitialShape::round: return "round";
    case InitialShape::sausage: return "sausage";
    case InitialShape::grid: return "grid";
  }
  return "?";
}

Packing initial_configuration(int n, const Body& C, double rho, InitialShape shape,
                              const SepOptions& opts) {
  if (n < 1) fail(Errc::invalid_argument, "initial_configuration: n >= 1 required");
  if (n == 1) return Packing(C, rho, {vec3(0, 0, 0)});

  auto build = [&](InitialShape s) -> Packing {
    if (s == InitialShape::sausage) {
      Vec e1 = vec2(1, 0);
      double step = 2.0 / gauge_norm(C, e1);
      std::vector<Vec> centers;
      for (int k = 0; k < n; ++k) centers.push_back(vec2(k * step, 0));
      return Packing(C, rho, std::move(centers));
    }
    LatticeBasis basis =
        s == InitialShape::grid ? lattice_basis(C, 1e300) : lattice_basis(C, rho);
    double scale = lattice_scale(C, basis);
    const int d = C.dim();
    int range = (int)std::ceil(std::pow(double(n), 1.0 / d)) + 2;
    std::vector<Vec> block = lattice_block(C, basis, scale, range, vec3(0, 0, 0));
    // grid blocks with an even side crop best around a half-cell point
    Vec anchor{0, 0, 0};
    if (s == InitialShape::grid) {
      int m = (int)std::lround(std::pow(double(n), 1.0 / d));
      int md = 1;
      for (int k = 0; k < d; ++k) md *= m;
      if (md == n && m % 2 == 0) {
        for (int k = 0; k < d; ++k) anchor += 0.5 * scale * basis.vecs[k];
      }
    }
    std::vector<Vec> centers = crop_points(C, std::move(block), anchor, n);
    return Packing(C, rho, std::move(centers));
  };

  auto verified = [&](const Packing& P) {
    return check_packing(P, opts.eps_rel).ok && rho_separable(P, opts).separable;
  };

  Packing P = build(shape);
  if (verified(P)) return P;
  if (shape == InitialShape::round && rho >= 3.0) {
    Packing G = build(InitialShape::grid);
    if (verified(G)) return G;
  }
  fail(Errc::unverified_packing,
       "initial_configuration: construction failed verification (shape " +
           initial_shape_name(shape) + ")");
}

OptimizationResult minimize_Mi(int n, const Body& C, double rho, int i,
                               const AnnealSchedule& sched, const MinimizeOptions& opts) {
  if (n < 2) fail(Errc::invalid_argument, "minimize_Mi: n >= 2 required");
  const int d = C.dim();
  if (i < 1 || i > d || (i == d && !opts.allow_volume_objective))
    fail(Errc::invalid_argument, "minimize_Mi: objective index out of range");
  if (!(sched.cooling_factor > 0 && sched.cooling_factor < 1))
    fail(Errc::invalid_argument, "minimize_Mi: cooling factor must be in (0,1)");
  if (sched.epochs < 1 || sched.chains < 1)
    fail(Errc::invalid_argument, "minimize_Mi: counts must be positive");

  Packing init = opts.init ? *opts.init : initial_configuration(n, C, rho, opts.init_shape, opts.sep);
  if ((int)init.centers.size() != n)
    fail(Errc::invalid_argument, "minimize_Mi: initial packing size mismatch");
  if (opts.init) {
    if (!check_packing(init, opts.sep.eps_rel).ok)
      fail(Errc::unverified_packing, "minimize_Mi: initial packing violates the packing condition");
    if (!rho_separable(init, opts.sep).separable)
      fail(Errc::unverified_packing, "minimize_Mi: initial packing is not rho-separable");
  }

  const int chains = sched.chains;
  std::vector<ChainResult> results(chains);
  const int nt = threads::resolve(opts.sep.threads);
#ifdef _OPENMP
  if (chains > 1 && nt > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(std::min(nt, chains))
    for (int c = 0; c < chains; ++c)
      results[c] = run_chain(C, rho, i, init.centers, sched, opts,
                             splitmix_seed(sched.seed, c));
  } else
#endif
  {
    for (int c = 0; c < chains; ++c)
      results[c] = run_chain(C, rho, i, init.centers, sched, opts, splitmix_seed(sched.seed, c));
  }

  int winner = 0;
  for (int c = 1; c < chains; ++c)
    if (results[c].best_obj < results[winner].best_obj) winner = c;

  OptimizationResult out{Packing(C, rho, results[winner].best), results[winner].best_obj,
                         std::move(results[winner].trace), false, true};
  if (!check_packing(out.packing, opts.sep.eps_rel).ok)
    fail(Errc::internal, "minimize_Mi: result failed the packing re-check");
  RhoSepResult rs = rho_separable(out.packing, opts.sep);
  if (!rs.separable) fail(Errc::internal, "minimize_Mi: result failed rho-separability re-check");
  out.verified = true;
  out.verification_exact = rs.exact;
  out.objective = objective_value(C, rho, out.packing.centers, i);
  return out;
}

NuLowerResult nu_lower(const Body& C, double rho, const Body& K, const NuLowerOptions& opts) {
  const int d = C.dim();
  if (K.dim() != d) fail(Errc::invalid_argument, "nu_lower: container dimension mismatch");
  const double tolm = 1e-12;
  if (K.circumradius() <= 0)
    return {1, Packing(C, rho, {vec3(0, 0, 0)})};  // degenerate container: one center

  auto inside_K = [&](const Vec& p) { return gauge_norm(K, p) <= 1.0 + tolm; };

  LatticeBasis basis = lattice_basis(C, rho);
  double scale = lattice_scale(C, basis);
  const double reach = K.circumradius();
  int range = (int)std::ceil(reach / scale) + 2;

  std::vector<Vec> half_offsets = {vec3(0, 0, 0)};
  {
    Vec a = 0.5 * scale * basis.vecs[0];
    Vec b = 0.5 * scale * basis.vecs[1];
    half_offsets.push_back(a);
    half_offsets.push_back(b);
    half_offsets.push_back(a + b);
    if (d == 3) {
      Vec c = 0.5 * scale * basis.vecs[2];
      half_offsets.push_back(c);
      half_offsets.push_back(a + b + c);
    }
  }

  std::vector<Vec> best_seed;
  for (const auto& off : half_offsets) {
    std::vector<Vec> pts;
    for (const auto& p : lattice_block(C, basis, scale, range, off))
      if (inside_K(p)) pts.push_back(p);
    if (pts.size() > best_seed.size()) best_seed = std::move(pts);
  }
  std::sort(best_seed.begin(), best_seed.end(), lex_less);

  auto make_valid = [&](std::vector<Vec> centers) -> std::optional<Packing> {
    if (centers.empty()) return std::nullopt;
    Packing P(C, rho, std::move(centers));
    if (!check_packing(P, opts.sep.eps_rel).ok) return std::nullopt;
    if (!rho_separable(P, opts.sep).separable) return std::nullopt;
    return P;
  };

  std::optional<Packing> seeded = make_valid(best_seed);
  if (!seeded) seeded = make_valid({vec3(0, 0, 0)});  // a single center is always valid
  Packing P = std::move(*seeded);

  // insertion attempts
  Rng rng(opts.seed);
  SepOptions sopt = opts.sep;
  const bool check_sep = rho >= 3.0;
  SepScreen screen{P, sopt, {}};
  for (int attempt = 0; attempt < opts.insertion_attempts; ++attempt) {
    Vec p = vec3(rng.uniform(-reach, reach), rng.uniform(-reach, reach),
                 d == 3 ? rng.uniform(-reach, reach) : 0.0);
    if (!inside_K(p)) continue;
    bool ok = true;
    for (const auto& c : P.centers)
      if (gauge_norm(C, p - c) < 2.0 * (1.0 - sopt.eps_rel)) { ok = false; break; }
    if (!ok) continue;
    P.centers.push_back(p);
    if (check_sep) {
      std::map<std::pair<int, int>, SeparationCertificate> staged;
      if (!screen.moved_ok({P.size() - 1}, staged)) {
        P.centers.pop_back();
        continue;
      }
      screen.commit(staged);
    }
  }

  // final from-scratch verification
  if (!check_packing(P, opts.sep.eps_rel).ok)
    fail(Errc::internal, "nu_lower: witness failed the packing re-check");
  if (!rho_separable(P, opts.sep).separable)
    fail(Errc::internal, "nu_lower: witness failed rho-separability re-check");
  return {P.size(), std::move(P)};
}

EstimateRcResult estimate_Rc(const Body& C, double rho, int n, const NuLowerOptions& opts) {
  if (n < 1) fail(Errc::invalid_argument, "estimate_Rc: n >= 1 required");
  const int d = C.dim();
  if (n == 1) return {0.0, Packing(C, rho, {vec3(0, 0, 0)}), true};

  int probe = 0;
  auto feasible = [&](double R) -> std::optional<Packing> {
    NuLowerOptions po = opts;
    po.seed = splitmix_seed(opts.seed, ++probe);
    NuLowerResult r = nu_lower(C, rho, Body::make_ball(d, R), po);
    if (r.count >= n) {
      r.witness.centers.resize(n);  // lattice seeds are sorted; keep the first n
      Packing W(C, rho, r.witness.centers);
      if (check_packing(W, opts.sep.eps_rel).ok && rho_separable(W, opts.sep).separable) return W;
    }
    return std::nullopt;
  };

  double lo = 0;
  double hi = std::max(C.circumradius(), 1e-6);
  std::optional<Packing> witness;
  int grow = 0;
  for (; grow < 64; ++grow) {
    witness = feasible(hi);
    if (witness) break;
    lo = hi;
    hi *= 2.0;
  }
  if (!witness) return {hi, Packing(C, rho, {vec3(0, 0, 0)}), false};

  while ((hi - lo) / hi > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (auto w = feasible(mid)) {
      hi = mid;
      witness = std::move(w);
    } else {
      lo = mid;
    }
  }
  return {hi, std::move(*witness), true};
}

}  // namespace sep

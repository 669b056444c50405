// Acceptance suite: one line per criterion, nonzero exit iff any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "seppack/density.hpp"
#include "seppack/harness.hpp"
#include "seppack/optimizer.hpp"
#include "seppack/packing_io.hpp"
#include "seppack/quermass.hpp"
#include "support/test_support.hpp"

using namespace sep;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

void criterion(int idx, const std::string& name, const std::function<void(Check&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d: %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", idx, name.c_str(),
              secs, c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SEPPACK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<Vec> grid_centers(int m, double spacing) {
  std::vector<Vec> c;
  double off = (m - 1) * spacing / 2.0;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) c.push_back(vec2(spacing * x - off, spacing * y - off));
  return c;
}

// ---------------------------------------------------------------- 1 -------
void c1_oracle_equivalence(Check& c) {
  int instances = 0, refined_runs = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    int want = 2 + int(seed % 7);
    std::vector<Vec> centers = septest::random_disk_centers(10'000 + seed, want, 10.0);
    if ((int)centers.size() < 2) continue;
    ++instances;
    Packing P(Body::unit_disk(), 1.0, centers);
    std::vector<int> subset(P.size());
    for (int k = 0; k < P.size(); ++k) subset[k] = k;
    // closest pair: the most constrained query
    int bi = 0, bj = 1;
    double bd = 1e300;
    for (int a = 0; a < P.size(); ++a)
      for (int b = a + 1; b < P.size(); ++b) {
        double d = norm2(P.centers[b] - P.centers[a]);
        if (d < bd) { bd = d; bi = a; bj = b; }
      }
    PairSepResult exact = pair_separable(P, subset, bi, bj);
    bool bf = septest::brute_force_pair_separable(P, subset, bi, bj, 3600, 2000);
    if (bf && !exact.feasible) {
      c.require(false, "brute force feasible but exact infeasible at seed " +
                           std::to_string(seed));
      return;
    }
    if (exact.feasible && !verify_certificate(P, subset, *exact.cert)) {
      c.require(false, "certificate failed verification at seed " + std::to_string(seed));
      return;
    }
    if (!exact.feasible) {
      ++refined_runs;
      if (septest::brute_force_pair_separable(P, subset, bi, bj, 36000, 20000)) {
        c.require(false, "refined brute force found a separator the exact sweep missed at seed " +
                             std::to_string(seed));
        return;
      }
    }
  }
  c.note("200 instances, " + std::to_string(refined_runs) + " refined infeasible confirmations");
}

// ---------------------------------------------------------------- 2 -------
void c2_quermass_exactness(Check& c) {
  for (int d : {2, 3}) {
    Hull B;
    B.dim = d;
    B.hull_dim = 0;
    B.verts = {vec3(0, 0, 0)};
    B.offset = 1.0;
    for (int i = 1; i <= d; ++i)
      c.require(std::abs(mean_projection(B, i) - kappa(i)) <= 1e-9,
                "M_" + std::to_string(i) + "(B^" + std::to_string(d) + ") != kappa");
  }
  int steiner_pass = 0;
  for (int t = 0; t < 100; ++t) {
    Hull h = septest::random_hull(20'000 + t, 2, 4 + t % 12, 3.0);
    if (steiner_check(h, 0.25 + 0.01 * (t % 50)).verdict == Verdict::pass) ++steiner_pass;
  }
  c.require(steiner_pass == 100, "steiner identity failed on " +
                                     std::to_string(100 - steiner_pass) + "/100 polygons");
  int surf_pass = 0;
  for (int t = 0; t < 100; ++t) {
    int d = t % 2 ? 3 : 2;
    Hull h = septest::random_hull(21'000 + t, d, 20, 2.5);
    double rel = d * kappa(d) / kappa(d - 1) * mean_projection(h, d - 1);
    if (std::abs(surface_area(h) - rel) <= 1e-9 * std::max(1.0, rel)) ++surf_pass;
  }
  c.require(surf_pass == 100, "surface-area relation failed");
}

// ---------------------------------------------------------------- 3 -------
void c3_theorem_property_suite(Check& c) {
  for (int d : {2, 3}) {
    int stab = 0, srv = 0, af = 0;
    for (int t = 0; t < 500; ++t) {
      Hull h = septest::random_hull(30'000 + 1000 * d + t, d, 6 + t % 40, 3.0);
      if (check_stability(h).verdict == Verdict::pass) ++stab;
      if (check_sr_vol(h).verdict == Verdict::pass) ++srv;
      bool all_af = true;
      for (const auto& r : af_ball_lower_bound(h))
        if (r.verdict != Verdict::pass) all_af = false;
      if (all_af) ++af;
    }
    c.require(stab == 500, "stability failures in d=" + std::to_string(d));
    c.require(srv == 500, "S r >= vol failures in d=" + std::to_string(d));
    c.require(af == 500, "AF ball bound failures in d=" + std::to_string(d));
  }
}

// ---------------------------------------------------------------- 4 -------
void c4_density_bound_grid(Check& c) {
  Packing P(Body::unit_disk(), 6.0, grid_centers(10, 2.0));
  InequalityRecord r = check_density_bound(P, septest::kHexDensity);
  c.require(r.verdict == Verdict::pass, "density bound check failed");
  c.require(r.note.find("exact-disk") != std::string::npos, "expected the exact-disk union");
  char buf[80];
  std::snprintf(buf, sizeof(buf), "lhs=%.6f margin=%.6f", r.lhs, r.margin);
  c.note(buf);
}

// ---------------------------------------------------------------- 5 -------
void c5_optimizer_sanity(Check& c) {
  // two disks from a spread start reach the stadium optimum
  AnnealSchedule s2;
  s2.seed = 2718;
  s2.epochs = 80;
  s2.moves_per_epoch = 600;
  Packing far(Body::unit_disk(), 1.0, {vec2(0, 0), vec2(6, 0)});
  MinimizeOptions m2;
  m2.init = &far;
  OptimizationResult r2 = minimize_Mi(2, Body::unit_disk(), 1.0, 1, s2, m2);
  c.require(std::abs(r2.objective - septest::kStadiumM1) <= 1e-6,
            "n=2 objective off the stadium closed form by " +
                std::to_string(std::abs(r2.objective - septest::kStadiumM1)));

  // n = 50: beat both seed constructions
  const int n = 50;
  Packing round = initial_configuration(n, Body::unit_disk(), 1.0, InitialShape::round);
  Packing sausage = initial_configuration(n, Body::unit_disk(), 1.0, InitialShape::sausage);
  double m_round = mean_projection(hull_of_packing(round), 1);
  double m_sausage = mean_projection(hull_of_packing(sausage), 1);

  AnnealSchedule s50;
  s50.seed = 11;
  s50.epochs = 100;
  s50.moves_per_epoch = 200 * n;
  s50.initial_temperature = 0.02;  // colder than the default: refine the crop
  OptimizationResult r50 = minimize_Mi(n, Body::unit_disk(), 1.0, 1, s50);
  c.require(r50.objective < m_sausage, "n=50 did not beat the sausage start");
  c.require(r50.objective < m_round, "n=50 did not beat the round start");

  Hull Q = hull_of_packing(r50.packing);
  double ratio = inradius_hull(Q).radius / circumradius_hull(Q).radius;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "M1=%.6f (round start %.6f, sausage start %.6f), r/R=%.4f",
                r50.objective, m_round, m_sausage, ratio);
  c.note(buf);
  if (ratio >= 0.75) {
    // hard threshold met
  } else if (ratio >= 0.70) {
    c.note("r/R in the soft band [0.70, 0.75): report-only");
  } else {
    c.require(false, "r/R below 0.70");
  }
}

// ---------------------------------------------------------------- 6 -------
void c6_constraint_effect(Check& c) {
  const int n = 49;
  AnnealSchedule su;
  su.seed = 23;
  su.epochs = 100;
  su.moves_per_epoch = 200 * n;
  su.initial_temperature = 0.02;
  OptimizationResult unconstrained = minimize_Mi(n, Body::unit_disk(), 1.0, 1, su);

  AnnealSchedule sc;
  sc.seed = 29;
  sc.epochs = 40;
  sc.moves_per_epoch = 40 * n;
  MinimizeOptions mc;
  mc.init_shape = InitialShape::grid;
  OptimizationResult constrained = minimize_Mi(n, Body::unit_disk(), 16.0, 1, sc, mc);

  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  TotalSepResult ts = totally_separable(constrained.packing, all);
  c.require(ts.separable, "constrained result is not totally separable");

  double margin = constrained.objective - unconstrained.objective;
  c.require(margin > 0, "separability constraint did not cost anything (margin " +
                            std::to_string(margin) + ")");
  char buf[120];
  std::snprintf(buf, sizeof(buf), "M1 constrained=%.6f, unconstrained=%.6f, margin=%.6f",
                constrained.objective, unconstrained.objective, margin);
  c.note(buf);
}

// ---------------------------------------------------------------- 7 -------
void c7_radius_bound_certified(Check& c) {
  DensityEstimate d1 = reference_density(Body::unit_disk(), 1.0);
  EstimateRcResult r2 = estimate_Rc(Body::unit_disk(), 1.0, 2);
  c.require(r2.complete && r2.R_upper <= 1.001, "R_upper for n=2 exceeds 1.001");
  auto recs = check_radius_bound(Body::unit_disk(), 1.0, 2, r2.R_upper, d1);
  c.require(recs[0].verdict == Verdict::pass && recs[0].margin >= 0,
            "radius bound margin negative for n=2");

  DensityEstimate d6 = reference_density(Body::unit_disk(), 6.0);
  EstimateRcResult r9 = estimate_Rc(Body::unit_disk(), 6.0, 9);
  c.require(r9.complete, "R_upper search for n=9 incomplete");
  c.require(rho_separable(r9.witness).separable, "n=9 witness not rho-separable");
  auto recs9 = check_radius_bound(Body::unit_disk(), 6.0, 9, r9.R_upper, d6);
  c.require(recs9[0].verdict == Verdict::pass && recs9[0].margin >= 0,
            "radius bound margin negative for n=9");
  char buf[120];
  std::snprintf(buf, sizeof(buf), "R_upper(n=2)=%.6f margin=%.4f; R_upper(n=9)=%.6f margin=%.4f",
                r2.R_upper, recs[0].margin, r9.R_upper, recs9[0].margin);
  c.note(buf);
}

// ---------------------------------------------------------------- 8 -------
void c8_derived_omega(Check& c) {
  // symbolic rearrangement agreement at 20 random tuples
  Rng rng(424242);
  for (int t = 0; t < 20; ++t) {
    int d = t % 2 ? 3 : 2;
    double rho = rng.uniform(1.0, 8.0);
    double Rr = rng.uniform(1.0, 4.0);
    double delta = rng.uniform(0.3, 0.95);
    double n = std::floor(rng.uniform(2, 1e6));
    double x = rng.uniform(0.0, 1.0);
    double A = 4.0 * d * d * (d - 1.0) * rho * Rr / delta;
    bool original = A * std::pow(n, -1.0 / d) >= theta(d) * std::pow(x, (d + 3.0) / 2.0);
    bool derived =
        x <= derived_omega(d, rho, Rr, 1.0, delta) * std::pow(n, -2.0 / (d * (d + 3.0)));
    c.require(original == derived, "rearranged form disagrees at tuple " + std::to_string(t));
  }

  // smoke-scale anneal (n=500; the full 5000-center run exceeds the time
  // budget on this hardware, so the threshold records must read not-applicable)
  const int n = 500;
  AnnealSchedule s;
  s.seed = 101;
  s.epochs = 30;
  s.moves_per_epoch = 20 * n;
  OptimizationResult res = minimize_Mi(n, Body::unit_disk(), 1.0, 1, s);
  DensityEstimate delta = reference_density(Body::unit_disk(), 1.0);
  auto recs = check_theorem(res.packing, 1, res, delta);

  bool saw_lo = false, saw_hi = false, saw_shape = false;
  for (const auto& r : recs) {
    if (r.name == "theorem.threshold.delta_lower") {
      saw_lo = true;
      c.require(r.lhs == n, "threshold lhs is not n");
      c.require(std::isfinite(r.rhs) && r.rhs > 0, "threshold rhs not finite");
    }
    if (r.name == "theorem.threshold.delta_upper") saw_hi = true;
    if (r.name == "theorem.shape-bound") {
      saw_shape = true;
      c.require(r.verdict == Verdict::not_applicable,
                "smoke-scale run must be marked threshold-not-applicable");
      c.require(std::isfinite(r.lhs) && std::isfinite(r.rhs), "shape bound values not finite");
    }
  }
  c.require(saw_lo && saw_hi && saw_shape, "missing theorem records");
  char buf[100];
  std::snprintf(buf, sizeof(buf), "smoke n=%d, found M1=%.4f", n, res.objective);
  c.note(buf);
}

// ---------------------------------------------------------------- 9 -------
void c9_determinism(Check& c) {
  auto same_twice = [&](const std::string& args, const std::string& out_a,
                        const std::string& out_b) {
    int ra = run_cli(args + " --out " + out_a);
    int rb = run_cli(args + " --out " + out_b);
    if (ra != 0 || rb != 0) return false;
    std::string a = slurp(out_a), b = slurp(out_b);
    return !a.empty() && a == b;
  };
  c.require(same_twice("generate --shape grid --n 9 --body disk:1 --rho 6 --seed 5 --threads 1",
                       "/tmp/acc_gen_a.json", "/tmp/acc_gen_b.json"),
            "generate not byte-identical");
  c.require(same_twice("optimize --n 16 --body disk:1 --rho 1 --i 1 --epochs 10 "
                       "--moves-per-epoch 160 --seed 5 --threads 1",
                       "/tmp/acc_opt_a.json", "/tmp/acc_opt_b.json"),
            "optimize not byte-identical");
  c.require(same_twice("check /tmp/acc_gen_a.json --suite all --seed 5 --threads 1",
                       "/tmp/acc_chk_a.json", "/tmp/acc_chk_b.json"),
            "check not byte-identical");
  c.require(same_twice("render /tmp/acc_gen_a.json --certificates --seed 5 --threads 1",
                       "/tmp/acc_ren_a.svg", "/tmp/acc_ren_b.svg"),
            "render not byte-identical");
}

}  // namespace

int main() {
  std::printf("acceptance suite (threads=1)\n");
  threads::set_max(1);

  criterion(1, "separability oracle equivalence, 200 instances", c1_oracle_equivalence);
  criterion(2, "quermassintegral exactness", c2_quermass_exactness);
  criterion(3, "stability / S r / AF property suite, 500 hulls per dimension",
            c3_theorem_property_suite);
  criterion(4, "union-density one-sided check on the 10x10 grid", c4_density_bound_grid);
  criterion(5, "optimizer sanity (stadium + n=50)", c5_optimizer_sanity);
  criterion(6, "separability constraint can only hurt (n=49, rho=16)", c6_constraint_effect);
  criterion(7, "certified radius-count bound", c7_radius_bound_certified);
  criterion(8, "derived omega consistency + theorem records", c8_derived_omega);
  criterion(9, "determinism: byte-identical outputs at --threads 1", c9_determinism);

  std::printf("%d criterion failure(s)\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}

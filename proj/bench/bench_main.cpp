// Kernel benchmark: OpenMP-parallel paths against their serial references.
// The parallel paths use fixed per-stratum streams with ordered reduction,
// so results must agree exactly; this harness times both and checks that.

#include <chrono>
#include <cstdio>
#include <string>

#include "seppack/density.hpp"
#include "seppack/mc.hpp"
#include "seppack/separability.hpp"
#include "support/test_support.hpp"

using namespace sep;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Timing {
  double serial = 0, parallel = 0;
};

void report(const std::string& name, const Timing& t, bool equal) {
  std::printf("%-34s serial %8.3fs  omp %8.3fs  speedup %5.2fx  results %s\n", name.c_str(),
              t.serial, t.parallel, t.serial / std::max(t.parallel, 1e-9),
              equal ? "equal" : "DIFFER");
}

std::vector<Vec> grid_centers(int m, double spacing) {
  std::vector<Vec> c;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) c.push_back(vec2(spacing * x, spacing * y));
  return c;
}

void bench_union_volume(int threads) {
  Packing P(Body::unit_disk(), 1.0, grid_centers(8, 2.0));
  UnionVolumeOptions opt;
  opt.mc_samples = 4'000'000;

  Timing t;
  opt.threads = 1;
  double t0 = now();
  UnionVolume serial = union_volume(P, 2.0, UnionVolumeMethod::monte_carlo, opt);
  t.serial = now() - t0;

  opt.threads = threads;
  t0 = now();
  UnionVolume par = union_volume(P, 2.0, UnionVolumeMethod::monte_carlo, opt);
  t.parallel = now() - t0;

  report("union volume monte carlo", t, serial.value == par.value);
  UnionVolume exact = union_volume(P, 2.0, UnionVolumeMethod::exact_disk);
  std::printf("%-34s exact %.6f  mc %.6f +- %.6f\n", "  (exact-disk reference)", exact.value,
              par.value, par.error_bound);
}

void bench_brute_force(int threads) {
  // rotated 3x3 grid: the only separators are the rotated tangent lines,
  // which the finite grid essentially never hits, so the scan runs full
  double a = 0.6435;
  std::vector<Vec> centers;
  for (const auto& c : grid_centers(3, 2.0))
    centers.push_back(vec2(c[0] * std::cos(a) - c[1] * std::sin(a),
                           c[0] * std::sin(a) + c[1] * std::cos(a)));
  Packing P(Body::unit_disk(), 1.0, centers);
  std::vector<int> subset(P.size());
  for (int k = 0; k < P.size(); ++k) subset[k] = k;

  Timing t;
  double t0 = now();
  bool serial = septest::brute_force_pair_separable(P, subset, 0, 8, 14400, 8000);
  t.serial = now() - t0;
  t0 = now();
  bool par = septest::brute_force_pair_separable_omp(P, subset, 0, 8, 14400, 8000, 1e-9, threads);
  t.parallel = now() - t0;
  report("brute-force separability sweep", t, serial == par);
}

void bench_rho_separable(int threads) {
  Packing P(Body::unit_disk(), 6.0, grid_centers(10, 2.0));

  Timing t;
  SepOptions opt;
  opt.threads = 1;
  double t0 = now();
  bool serial = rho_separable(P, opt).separable;
  t.serial = now() - t0;

  opt.threads = threads;
  t0 = now();
  bool par = rho_separable(P, opt).separable;
  t.parallel = now() - t0;
  report("rho-separability verification", t, serial == par);
}

}  // namespace

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : threads::max();
  std::printf("benchmark with %d thread(s)\n", threads);
  bench_union_volume(threads);
  bench_brute_force(threads);
  bench_rho_separable(threads);
  return 0;
}

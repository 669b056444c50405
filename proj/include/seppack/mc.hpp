#pragma once

#include <cstdint>
#include <vector>

#include "seppack/core.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sep {

struct McResult {
  double value = 0;
  double sigma = 0;  // one standard deviation of the estimate
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

// Stratified hit-or-miss volume estimate over an axis-aligned box. Each
// stratum draws from its own fixed-seed substream and partial results are
// reduced in stratum order, so the outcome is identical for any thread
// count; threads = 1 runs the plain serial loop (the reference path used by
// tests and the benchmark).
template <class InsideFn>
McResult stratified_mc(const Vec& lo, const Vec& hi, int dim, std::array<int, 3> strata,
                       std::uint64_t total_samples, std::uint64_t seed, int threads,
                       InsideFn&& inside) {
  std::array<int, 3> ns = strata;
  if (dim == 2) ns[2] = 1;
  const std::int64_t count = std::int64_t(ns[0]) * ns[1] * ns[2];
  std::array<double, 3> step{(hi[0] - lo[0]) / ns[0], (hi[1] - lo[1]) / ns[1],
                             dim == 3 ? (hi[2] - lo[2]) / ns[2] : 1.0};
  const double cell_vol = step[0] * step[1] * (dim == 3 ? step[2] : 1.0);
  const std::uint64_t base = total_samples / count;
  const std::uint64_t rem = total_samples % count;

  std::vector<double> part_val(count), part_var(count);
  std::vector<std::uint64_t> part_hits(count), part_n(count);

  auto run_stratum = [&](std::int64_t s) {
    int sx = int(s % ns[0]);
    int sy = int((s / ns[0]) % ns[1]);
    int sz = int(s / (std::int64_t(ns[0]) * ns[1]));
    Rng rng = Rng::substream(seed, std::uint64_t(s));
    std::uint64_t n = base + (std::uint64_t(s) < rem ? 1 : 0);
    std::uint64_t hit = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      Vec p{lo[0] + (sx + rng.uniform()) * step[0], lo[1] + (sy + rng.uniform()) * step[1], 0.0};
      if (dim == 3) p[2] = lo[2] + (sz + rng.uniform()) * step[2];
      if (inside(p)) ++hit;
    }
    double ph = n ? double(hit) / double(n) : 0.0;
    part_val[s] = cell_vol * ph;
    part_var[s] = n ? cell_vol * cell_vol * ph * (1.0 - ph) / double(n) : 0.0;
    part_hits[s] = hit;
    part_n[s] = n;
  };

#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t s = 0; s < count; ++s) run_stratum(s);
  } else
#endif
  {
    (void)threads;
    for (std::int64_t s = 0; s < count; ++s) run_stratum(s);
  }

  McResult r;
  for (std::int64_t s = 0; s < count; ++s) {  // ordered reduction
    r.value += part_val[s];
    r.sigma += part_var[s];
    r.hits += part_hits[s];
    r.samples += part_n[s];
  }
  r.sigma = std::sqrt(r.sigma);
  return r;
}

}  // namespace sep

#pragma once

// Test-side oracles and generators. Everything here is independent of the
// library's decision procedures so it can serve as a cross-check.

#include <cstdint>
#include <vector>

#include "seppack/body.hpp"
#include "seppack/hull.hpp"
#include "seppack/packing.hpp"

namespace septest {

// Dense (theta, offset) sweep deciding pair separability by brute force.
// Feasibility confirmations are sound; a negative answer only means the grid
// found nothing. Serial reference implementation plus an OpenMP variant used
// by the benchmark; both return identical verdicts.
bool brute_force_pair_separable(const sep::Packing& P, const std::vector<int>& subset, int i,
                                int j, int n_dirs, int n_offsets, double eps_rel = 1e-9);
bool brute_force_pair_separable_omp(const sep::Packing& P, const std::vector<int>& subset, int i,
                                    int j, int n_dirs, int n_offsets, double eps_rel = 1e-9,
                                    int threads = 0);

// membership-bisection gauge oracle: smallest t with x in tC, decided by a
// plain point-in-convex-polygon test on the scaled vertex list
double gauge_norm_oracle(const sep::Body& C, const sep::Vec& x, double tol = 1e-12);

// random packing of unit disks with centers in [0, box]^2, pairwise
// distances >= 2; n is trimmed if rejection sampling stalls
std::vector<sep::Vec> random_disk_centers(std::uint64_t seed, int n, double box);

// hull of `count` random points: d=2 in a disk of the given radius, d=3 in a
// ball; never degenerate for count >= d + 1 (resampled otherwise)
sep::Hull random_hull(std::uint64_t seed, int dim, int count, double radius);

// high-precision fixture values (frozen from an independent evaluation)
inline constexpr double kTheta2 = 9.47374313794841464e-05;
inline constexpr double kTheta3 = 6.07740905658654121e-06;
inline constexpr double kUniversalLb2 = 0.680174761587831694;    // pi sqrt(3) / 8
inline constexpr double kUniversalLb3 = 0.585195553354957422;
inline constexpr double kHexDensity = 0.906899682117108925;  // pi / sqrt(12)
inline constexpr double kGridDensity = 0.785398163397448310;  // pi / 4
inline constexpr double kStadiumM1 = 3.27323954473516269;     // 2 + 4/pi

}  // namespace septest

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seppack/packing.hpp"
#include "seppack/separability.hpp"

namespace sep {

enum class DensitySource { reference, universal_bound, trivial_upper, certified_construction };

// Certified interval bounds on a packing density. The separable density of a
// body is a supremum over all packings, so only bounds with provenance are
// ever reported; nothing here "computes" it.
struct DensityEstimate {
  double lower = 0;
  double upper = 1;
  DensitySource source = DensitySource::trivial_upper;
};

struct ObservationWindow {
  double half_width = 1;
  int dim = 2;
};

// Axis-aligned periodic cell. Cubic windows are the common case; per-axis
// widths admit lattices (hexagonal rows) whose exact period is not square.
struct TorusCell {
  std::array<double, 3> half_widths{1, 1, 1};
  int dim = 2;
  static TorusCell cube(const ObservationWindow& w) {
    return {{w.half_width, w.half_width, w.half_width}, w.dim};
  }
  double volume() const {
    double v = 2 * half_widths[0] * 2 * half_widths[1];
    return dim == 3 ? v * 2 * half_widths[2] : v;
  }
};

// registered reference bounds, shipped as a versioned data file and mirrored
// as a built-in table; rho ranges are [rho_min, rho_max)
struct DensityTableEntry {
  std::string body;
  double rho_min = 1;
  double rho_max = 1e300;
  double lower = 0;
  double upper = 1;
  std::string citation;
};

const std::vector<DensityTableEntry>& builtin_density_table();
std::vector<DensityTableEntry> load_density_table(const std::string& path);
std::optional<std::string> registered_body_name(const Body& C);

// interval bounds for (C, rho): registered bodies from the table, anything
// else falls back to the universal lower bound with trivial upper 1
DensityEstimate reference_density(const Body& C, double rho,
                                  const std::vector<DensityTableEntry>* table = nullptr);

// universal lower bound on the separable packing density of an o-symmetric
// body in dimension d (reciprocal of the displayed upper bound on 1/delta)
double universal_density_bound(int d);

enum class UnionVolumeMethod { exact_disk, monte_carlo };

struct UnionVolumeOptions {
  std::uint64_t mc_samples = 1'000'000;
  std::array<int, 3> mc_strata{100, 100, 20};  // 100x100 in 2D, 20^3 in 3D
  std::uint64_t seed = 7;
  int threads = 1;
};

struct UnionVolume {
  double value = 0;
  double error_bound = 0;  // 3 sigma for monte-carlo, 0 for exact
};

// volume of union(c_i + inflation * C). exact_disk: circle-arrangement arc
// decomposition (d=2 ball bodies); monte_carlo: stratified sampling with a
// reported 3 sigma half-width.
UnionVolume union_volume(const Packing& P, double inflation,
                         UnionVolumeMethod method = UnionVolumeMethod::monte_carlo,
                         const UnionVolumeOptions& opt = {});

// exact union area of equal-radius disks (exposed for tests and the bench)
double disk_union_area(const std::vector<Vec>& centers, double radius);

struct TorusDensityOptions {
  SepOptions sep;
};

// certified lower bound from a periodic construction: the packing is wrapped
// into the cell, unfolded over the 3^d neighborhood, and validity plus
// rho-separability are verified on the unfolding before the density
// n vol(C) / vol(cell) is reported.
DensityEstimate torus_density(const TorusCell& cell, const Packing& P,
                              const TorusDensityOptions& opt = {});

}  // namespace sep

#pragma once

#include <cstdint>
#include <optional>

#include "seppack/packing.hpp"
#include "seppack/separability.hpp"

namespace sep {

struct AnnealSchedule {
  double initial_temperature = -1;  // <= 0: 0.05 * objective(initial)
  double cooling_factor = 0.95;     // per epoch
  int moves_per_epoch = -1;         // <= 0: 200 * n
  int epochs = 100;
  std::uint64_t seed = 1;
  double move_scale = 0.5;  // gaussian step, fraction of r(C)
  int chains = 1;           // independent chains; best verified result wins
};

struct TracePoint {
  int epoch;
  double best;
  double current;
  double temperature;
};

struct OptimizationResult {
  Packing packing;
  double objective = 0;  // M_i of the hull of `packing`
  std::vector<TracePoint> trace;
  bool verified = false;
  bool verification_exact = true;
};

enum class InitialShape { round, sausage, grid };

InitialShape initial_shape_from_name(const std::string& name);
std::string initial_shape_name(InitialShape s);

// Deterministic seed constructions, verified rho-separable before return:
//   round   - densest rho-compatible lattice cropped to n by gauge distance
//             (grid fallback when rho >= 3 invalidates the hexagonal crop)
//   sausage - collinear centers at gauge spacing 2
//   grid    - square lattice block at gauge spacing 2, cropped to n
Packing initial_configuration(int n, const Body& C, double rho, InitialShape shape,
                              const SepOptions& opts = {});

struct MinimizeOptions {
  SepOptions sep;
  InitialShape init_shape = InitialShape::round;
  const Packing* init = nullptr;        // overrides init_shape when given
  bool allow_volume_objective = false;  // permit i = d
  bool force_separability_checks = false;  // disable the rho < 3 fast path
};

// Simulated annealing over center configurations for min M_i(conv of the
// packing). Moves: single-center gaussian perturbation, relocation of the
// outermost center next to a random neighbor, and global contraction toward
// the centroid. Each move is screened by the pairwise overlap check and, when
// the constraint is active, by incremental re-verification of exactly the
// sub-packings the moved center participates in (certificates are cached and
// re-validated rather than recomputed).
OptimizationResult minimize_Mi(int n, const Body& C, double rho, int i,
                               const AnnealSchedule& sched, const MinimizeOptions& opts = {});

struct NuLowerOptions {
  SepOptions sep;
  std::uint64_t seed = 1;
  int insertion_attempts = 400;
};

struct NuLowerResult {
  int count = 0;
  Packing witness;
};

// constructive lower bound on the largest rho-separable packing with centers
// in K: lattice seeding over a few offsets plus random insertion attempts;
// the returned witness is re-verified from scratch
NuLowerResult nu_lower(const Body& C, double rho, const Body& K, const NuLowerOptions& opts = {});

struct EstimateRcResult {
  double R_upper = 0;
  Packing witness;
  bool complete = true;
};

// upper bound on the smallest ball radius admitting n centers: binary search
// on nu_lower feasibility, terminating at relative width 1e-3
EstimateRcResult estimate_Rc(const Body& C, double rho, int n, const NuLowerOptions& opts = {});

}  // namespace sep

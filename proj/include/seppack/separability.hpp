#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "seppack/packing.hpp"

namespace sep {

struct SepOptions {
  double eps_rel = 1e-9;
  // try a handful of cheap candidate directions (previous certificate, axes,
  // center difference) before running the exact machinery; certificates are
  // verified either way, only the reported direction can differ from the
  // sweep's first-in-angular-order choice
  bool quick_directions = true;
  // planes must avoid interiors of the entire packing, not only the
  // sub-packing under test (the stricter reading)
  bool strict_global = false;
  int d3_subset_cap = 14;
  // above the cap: sampled-direction fallback instead of a capacity error;
  // results are flagged non-exact
  bool allow_heuristic = false;
  int heuristic_dirs = 4096;
  int threads = 1;
};

// Hyperplane witnessing the separation of one pair: the pair's elements lie
// on opposite closed sides and the plane meets no element's interior within
// the constraint set it was issued for. Touching is legal.
struct SeparationCertificate {
  std::pair<int, int> pair;  // (below, above)
  Hyperplane plane;
  std::vector<int> subset;        // constraint set the plane was checked against
  std::vector<std::int8_t> side;  // per subset position: -1 below, +1 above
};

struct OverlapViolation {
  int i, j;
  double norm;  // ||c_j - c_i||_C
};

struct PackingCheck {
  bool ok = true;
  std::vector<OverlapViolation> violations;
};

// pairwise gauge condition ||c_j - c_k||_C >= 2; reports all violating pairs
PackingCheck check_packing(const Packing& P, double eps_rel = kEpsRel);

struct PairSepResult {
  bool feasible = false;
  bool exact = true;  // false only for heuristic fallback conclusions
  std::optional<SeparationCertificate> cert;
};

// Decide whether elements i and j of the given subset admit a separating
// hyperplane avoiding every subset element's interior. d=2 runs an exact
// critical-direction sweep; d=3 branches over side assignments with a small
// feasibility program per node. `hint` seeds the quick-direction phase.
PairSepResult pair_separable(const Packing& P, const std::vector<int>& subset, int i, int j,
                             const SepOptions& opts = {},
                             const SeparationCertificate* hint = nullptr);

struct TotalSepResult {
  bool separable = false;
  bool exact = true;
  std::vector<SeparationCertificate> certificates;
  std::optional<std::pair<int, int>> failing_pair;  // lexicographically first
};

TotalSepResult totally_separable(const Packing& P, const std::vector<int>& subset,
                                 const SepOptions& opts = {});

// {j : ||c_j - c_i||_C <= rho - 1}, the indices whose translates lie in
// c_i + rho C; always contains i
std::vector<int> rho_subpacking(const Packing& P, int i, double eps_rel = kEpsRel);

struct RhoSepResult {
  bool separable = false;
  bool exact = true;
  struct Witness {
    int center;
    std::pair<int, int> pair;
  };
  std::optional<Witness> witness;
};

// every sub-packing totally separable; immediate for rho < 3 (sub-packings
// are singletons in any valid packing). Precondition: check_packing passed.
RhoSepResult rho_separable(const Packing& P, const SepOptions& opts = {});

// independent O(n) re-check of a certificate against the given subset
bool verify_certificate(const Packing& P, const std::vector<int>& subset,
                        const SeparationCertificate& cert, double eps_rel = kEpsRel);

}  // namespace sep

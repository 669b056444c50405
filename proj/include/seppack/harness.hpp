#pragma once

#include <optional>

#include "seppack/density.hpp"
#include "seppack/optimizer.hpp"
#include "seppack/quermass.hpp"
#include "seppack/records.hpp"

namespace sep {

// context echoed into reports: everything a record's thresholds depend on
struct TheoremContext {
  int d = 2;
  int i = 1;
  double rho = 1;
  double r_C = 1;
  double R_C = 1;
  double vol_C = 0;
  int n = 0;
  DensityEstimate delta;
};

// dimension constant of the ball-shape stability inequality
double theta(int d);

// explicit shape-bound constant obtained by rearranging the final inequality
// of the proof chain: 1 - r/R <= omega * n^{-2/(d(d+3))} with
// omega = (4 d^2 (d-1) rho R(C) / (theta(d) delta r(C)))^{2/(d+3)}
double derived_omega(int d, double rho, double R_C, double r_C, double delta_lower);

// (S/S(B^d))^d (vol(B^d)/vol)^{d-1} - 1 >= theta(d) (1 - r/R)^{(d+3)/2};
// a theorem for all convex bodies, so failure flags a metrics bug
InequalityRecord check_stability(const Hull& Q);

// S(Q) r(Q) >= vol(Q)
InequalityRecord check_sr_vol(const Hull& Q);

struct DensityBoundOptions {
  UnionVolumeOptions uv;
  SepOptions sep;
  bool prefer_exact_disk = true;
};

// n vol(C) / vol(union c_i + 2 rho C) <= delta_upper; refuses packings that
// fail verification
InequalityRecord check_density_bound(const Packing& P, double delta_upper,
                                     const DensityBoundOptions& opt = {});

// certified direction of the volume sandwich around nu, plus the
// unverifiable direction recorded informationally at the interval endpoints
std::vector<InequalityRecord> check_nu_volume_sandwich(const Body& K, const Body& C, double rho,
                                                       int nu_lb, const DensityEstimate& delta);

// vol(C) n / (delta_upper kappa_d) <= (R_upper + 2 rho R(C))^d, plus the left
// inequality recorded informationally
std::vector<InequalityRecord> check_radius_bound(const Body& C, double rho, int n, double R_upper,
                                        const DensityEstimate& delta);

// ball mean-projection bound at R = R_C(rho, n), evaluated at the interval
// endpoints that keep the implication one-sided; hypothesis failure yields a
// not-applicable record
InequalityRecord check_ball_projection_bound(const Body& C, double rho, int n, int i, double R_upper,
                                      const DensityEstimate& delta);

// threshold applicability (both endpoints), explicit shape bound, observed
// sigma against the stated window (both endpoints), and the certified upper
// bound on M_i when R_upper is available
std::vector<InequalityRecord> check_theorem(const Packing& P, int i,
                                            const OptimizationResult& result,
                                            const DensityEstimate& delta,
                                            std::optional<double> R_upper = std::nullopt);

// nu_lower(Y) >= vol(Y) nu_lower(X) / vol(X - Y) - 1; both sides are lower
// bounds, recorded for regression tracking only
InequalityRecord check_counting_bound(const Body& X, const Body& Y, const Body& C, double rho,
                                const NuLowerOptions& opt = {});

std::string report_json(const std::vector<InequalityRecord>& records);
std::string report_table(const std::vector<InequalityRecord>& records);

// sorted by name; checks themselves may run in any order
void sort_report(std::vector<InequalityRecord>& records);

}  // namespace sep

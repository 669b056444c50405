#include "seppack/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sep {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

double theta(int d) {
  if (d < 2) fail(Errc::invalid_argument, "theta: d >= 2 required");
  double dd = d;
  double pre = 1.0 / (std::pow(2.0, (dd + 3.0) / 2.0) * std::sqrt(2.0 * kPi) * std::sqrt(dd) *
                      (dd - 1.0) * (dd + 3.0));
  double a = 3.0 / (kPi * kPi * dd * (dd + 2.0) * std::pow(2.0, dd));
  double b = 16.0 / std::pow(dd * kPi, (dd - 1.0) / 4.0);
  return pre * std::min(a, b);
}

double derived_omega(int d, double rho, double R_C, double r_C, double delta_lower) {
  double base = 4.0 * d * d * (d - 1.0) * rho * R_C / (theta(d) * delta_lower * r_C);
  return std::pow(base, 2.0 / (d + 3.0));
}

InequalityRecord check_stability(const Hull& Q) {
  const int d = Q.dim;
  HullMetrics m = hull_metrics(Q);
  double deficit = std::pow(m.surface_area / (d * kappa(d)), double(d)) *
                       std::pow(kappa(d) / m.volume, double(d - 1)) -
                   1.0;
  double rhs = theta(d) * std::pow(std::max(0.0, 1.0 - m.inradius / m.circumradius),
                                   (d + 3.0) / 2.0);
  Digest dig;
  dig.add("stability").add(d).add(m.surface_area).add(m.volume).add(m.inradius)
      .add(m.circumradius);
  return make_record("stability", deficit, rhs, ">=", Semantics::exact,
                     kEpsRel * std::max(1.0, std::abs(rhs)), dig.hex());
}

InequalityRecord check_sr_vol(const Hull& Q) {
  HullMetrics m = hull_metrics(Q);
  Digest dig;
  dig.add("sr-vol").add(Q.dim).add(m.surface_area).add(m.inradius).add(m.volume);
  return make_record("sr-vol", m.surface_area * m.inradius, m.volume, ">=", Semantics::exact,
                     kEpsRel * std::max(1.0, m.volume), dig.hex());
}

InequalityRecord check_density_bound(const Packing& P, double delta_upper,
                                     const DensityBoundOptions& opt) {
  if (!check_packing(P, opt.sep.eps_rel).ok)
    fail(Errc::unverified_packing, "check_density_bound: packing condition violated");
  if (!rho_separable(P, opt.sep).separable)
    fail(Errc::unverified_packing, "check_density_bound: packing is not rho-separable");

  const bool exact = opt.prefer_exact_disk && P.body.is_ball() && P.dim() == 2;
  UnionVolume uv = union_volume(P, 2.0 * P.rho,
                                exact ? UnionVolumeMethod::exact_disk
                                      : UnionVolumeMethod::monte_carlo,
                                opt.uv);
  double lhs = P.size() * body_volume(P.body) / uv.value;
  Digest dig;
  dig.add("density-bound").add(P.size()).add(P.rho).add(body_volume(P.body)).add(uv.value)
      .add(delta_upper);
  InequalityRecord r = make_record(
      "density-bound", lhs, delta_upper, "<=", Semantics::one_sided_certified,
      kEpsRel + (uv.error_bound > 0 ? uv.error_bound / uv.value * lhs : 0.0), dig.hex());
  r.note = exact ? "union volume: exact-disk" : "union volume: monte-carlo, 3sigma=" +
                                                    fmt(uv.error_bound);
  return r;
}

std::vector<InequalityRecord> check_nu_volume_sandwich(const Body& K, const Body& C, double rho,
                                                       int nu_lb, const DensityEstimate& delta) {
  const int d = C.dim();
  double rK = K.inradius();
  double factor = std::pow(1.0 + 2.0 * rho * C.circumradius() / rK, -double(d));
  double lhs_bound = factor * body_volume(C) * nu_lb / delta.upper;
  Digest dig;
  dig.add("nu-sandwich").add(d).add(rho).add(nu_lb).add(body_volume(K)).add(delta.upper);
  std::vector<InequalityRecord> out;
  out.push_back(make_record("nu-sandwich.lower", lhs_bound, body_volume(K), "<=",
                            Semantics::one_sided_certified,
                            kEpsRel * std::max(1.0, body_volume(K)), dig.hex(),
                            "certified via nu >= nu_lb and delta_sep <= delta_upper"));
  // the other direction needs exact nu and delta_sep; report the interval
  InequalityRecord info = make_record(
      "nu-sandwich.upper.informational", body_volume(K), body_volume(C) * nu_lb / delta.lower,
      "<=", Semantics::heuristic, kEpsRel, dig.hex(),
      "unverifiable direction; rhs uses the certified lower bounds at delta_lower=" +
          fmt(delta.lower));
  info.verdict = Verdict::informational;
  out.push_back(std::move(info));
  return out;
}

std::vector<InequalityRecord> check_radius_bound(const Body& C, double rho, int n, double R_upper,
                                        const DensityEstimate& delta) {
  const int d = C.dim();
  double mid = body_volume(C) * n / (delta.upper * kappa(d));
  double rhs = std::pow(R_upper + 2.0 * rho * C.circumradius(), double(d));
  Digest dig;
  dig.add("radius-bound").add(d).add(rho).add(n).add(R_upper).add(delta.upper);
  std::vector<InequalityRecord> out;
  out.push_back(make_record("radius-bound.certified", mid, rhs, "<=", Semantics::one_sided_certified,
                            kEpsRel * std::max(1.0, rhs), dig.hex(),
                            "vol(C) n / (delta_upper kappa_d) vs (R_upper + 2 rho R(C))^d"));
  InequalityRecord info = make_record(
      "radius-bound.left.informational", std::pow(R_upper, double(d)),
      body_volume(C) * n / (delta.lower * kappa(d)), "<=", Semantics::heuristic, kEpsRel,
      dig.hex(),
      "left inequality shown at R_upper >= R_C and delta_lower; interval [" + fmt(delta.lower) +
          "," + fmt(delta.upper) + "]");
  info.verdict = Verdict::informational;
  out.push_back(std::move(info));
  return out;
}

InequalityRecord check_ball_projection_bound(const Body& C, double rho, int n, int i, double R_upper,
                                      const DensityEstimate& delta) {
  const int d = C.dim();
  if (i < 1 || i >= d) fail(Errc::invalid_argument, "check_ball_projection_bound: need 1 <= i < d");
  double RC = C.circumradius(), rC = C.inradius();
  double threshold = std::pow(4.0, d) * delta.upper * std::pow(rho * RC / rC, double(d));
  Digest dig;
  dig.add("ball-projection").add(d).add(i).add(rho).add(n).add(R_upper).add(delta.lower)
      .add(delta.upper);
  if (n < threshold) {
    InequalityRecord r = make_record("ball-projection-bound", 0, 0, "<=", Semantics::one_sided_certified,
                                     kEpsRel, dig.hex(),
                                     "hypothesis n >= " + fmt(threshold) +
                                         " fails at delta_upper; not applicable");
    r.verdict = Verdict::not_applicable;
    return r;
  }
  double lhs = kappa(i) * std::pow(R_upper + rho * RC, double(i));
  double rhs = kappa(i) * std::pow(body_volume(C) * n / (delta.lower * kappa(d)), double(i) / d) *
               std::pow(1.0 + 2.0 * std::pow(delta.upper, 1.0 / d) * rho * RC / rC /
                                  std::pow(double(n), 1.0 / d),
                        double(i));
  return make_record("ball-projection-bound", lhs, rhs, "<=", Semantics::one_sided_certified,
                     kEpsRel * std::max(1.0, rhs), dig.hex(),
                     "delta_lower in the volume factor, delta_upper in the parenthetical term; "
                     "lhs at R_upper >= R_C");
}

std::vector<InequalityRecord> check_theorem(const Packing& P, int i,
                                            const OptimizationResult& result,
                                            const DensityEstimate& delta,
                                            std::optional<double> R_upper) {
  TheoremContext ctx;
  ctx.d = P.dim();
  ctx.i = i;
  ctx.rho = P.rho;
  ctx.r_C = P.body.inradius();
  ctx.R_C = P.body.circumradius();
  ctx.vol_C = body_volume(P.body);
  ctx.n = P.size();
  ctx.delta = delta;

  const int d = ctx.d;
  const int n = ctx.n;
  const double RC = ctx.R_C, rC = ctx.r_C;
  const double rho = ctx.rho;
  std::vector<InequalityRecord> out;

  Digest dig;
  dig.add("theorem").add(d).add(i).add(rho).add(n).add(delta.lower).add(delta.upper)
      .add(result.objective);

  // (a) threshold applicability at both interval endpoints
  auto thr = [&](double dl) {
    return std::pow(4.0, d) * std::pow(double(d), 4.0 * d) / std::pow(dl, double(d - 1)) *
           std::pow(rho * RC / rC, double(d));
  };
  const double thr_lo = thr(delta.lower), thr_hi = thr(delta.upper);
  out.push_back(make_record("theorem.threshold.delta_lower", double(n), thr_lo, ">=",
                            Semantics::one_sided_certified, 0.0, dig.hex(),
                            "n-threshold evaluated at delta_lower=" + fmt(delta.lower)));
  out.push_back(make_record("theorem.threshold.delta_upper", double(n), thr_hi, ">=",
                            Semantics::one_sided_certified, 0.0, dig.hex(),
                            "n-threshold evaluated at delta_upper=" + fmt(delta.upper)));
  const bool applicable = n >= thr_lo;
  const bool certainly_not = n < thr_hi;

  // (b) explicit shape bound from the rearranged final inequality
  Hull Q = hull_of_packing(P);
  double rQ = inradius_hull(Q).radius;
  double RQ = circumradius_hull(Q).radius;
  double omega = derived_omega(d, rho, RC, rC, delta.lower);
  double shape_rhs = omega * std::pow(double(n), -2.0 / (d * (d + 3.0)));
  InequalityRecord shape =
      make_record("theorem.shape-bound", 1.0 - rQ / RQ, shape_rhs, "<=", Semantics::heuristic,
                  kEpsRel, dig.hex(),
                  "derived omega=" + fmt(omega) +
                      " at delta_lower; a violation cannot distinguish a suboptimal minimizer "
                      "from a metrics bug");
  if (!applicable) {
    shape.verdict = Verdict::not_applicable;
    shape.note += certainly_not ? "; threshold-not-applicable" : "; threshold indeterminate";
  }
  out.push_back(std::move(shape));

  // (c) observed sigma against the stated window, both endpoints
  for (auto [tag, dl] : {std::pair<const char*, double>{"delta_lower", delta.lower},
                         {"delta_upper", delta.upper}}) {
    double denom = kappa(i) * std::pow(ctx.vol_C * n / (dl * kappa(d)), double(i) / d);
    double sigma_obs = (result.objective / denom - 1.0) * std::pow(double(n), 1.0 / d);
    double win_lo = -2.25 * RC * rho * d * i / (rC * dl);
    double win_hi = 2.1 * RC * rho * i / (rC * dl);
    InequalityRecord lo_rec = make_record(
        std::string("theorem.sigma.lower.") + tag, sigma_obs, win_lo, ">=", Semantics::heuristic,
        kEpsRel * std::max(1.0, std::abs(win_lo)), dig.hex(),
        "sigma window at " + std::string(tag) + "=" + fmt(dl));
    InequalityRecord hi_rec = make_record(
        std::string("theorem.sigma.upper.") + tag, sigma_obs, win_hi, "<=", Semantics::heuristic,
        kEpsRel * std::max(1.0, std::abs(win_hi)), dig.hex(),
        "sigma window at " + std::string(tag) + "=" + fmt(dl));
    if (!applicable) {
      lo_rec.verdict = Verdict::not_applicable;
      hi_rec.verdict = Verdict::not_applicable;
    }
    out.push_back(std::move(lo_rec));
    out.push_back(std::move(hi_rec));
  }

  // (d) certified upper bound on the minimal M_i via the ball construction
  if (R_upper) {
    double rhs = kappa(i) * std::pow(*R_upper + rho * RC, double(i));
    InequalityRecord rec = make_record(
        "theorem.mi-upper", result.objective, rhs, "<=", Semantics::one_sided_certified,
        kEpsRel * std::max(1.0, rhs), dig.hex(),
        "found minimizer vs M_i((R_upper + rho R(C)) B^d)");
    if (rec.verdict == Verdict::fail) {
      rec.verdict = Verdict::informational;
      rec.note += "; found minimizer does not beat the ball construction (suboptimal search, "
                  "not a defect)";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

double minkowski_volume(const Body& X, const Body& Y) {
  // vol(X + Y); Y o-symmetric so X - Y and X + Y coincide
  if (X.is_ball() && Y.is_ball()) {
    Body s = Body::make_ball(X.dim(), X.radius() + Y.radius());
    return body_volume(s);
  }
  if (X.is_ball() || Y.is_ball()) {
    const Body& poly = X.is_ball() ? Y : X;
    const Body& ball = X.is_ball() ? X : Y;
    Hull h = convex_hull(poly.vertices(), poly.dim());
    h.offset = ball.radius();
    return hull_volume(h);
  }
  std::vector<Vec> sums;
  for (const auto& a : X.vertices())
    for (const auto& b : Y.vertices()) sums.push_back(a + b);
  return hull_volume(convex_hull(sums, X.dim()));
}

}  // namespace

InequalityRecord check_counting_bound(const Body& X, const Body& Y, const Body& C, double rho,
                                const NuLowerOptions& opt) {
  NuLowerResult nx = nu_lower(C, rho, X, opt);
  NuLowerResult ny = nu_lower(C, rho, Y, opt);
  double diff_vol = minkowski_volume(X, Y);
  double rhs = body_volume(Y) * nx.count / diff_vol - 1.0;  // integer-truncation slack
  Digest dig;
  dig.add("counting-bound").add(rho).add(nx.count).add(ny.count).add(diff_vol);
  return make_record("counting-bound", double(ny.count), rhs, ">=", Semantics::heuristic, kEpsRel,
                     dig.hex(), "both sides are constructive lower bounds; regression tracking");
}

void sort_report(std::vector<InequalityRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const InequalityRecord& a, const InequalityRecord& b) {
                     return a.name < b.name;
                   });
}

std::string report_json(const std::vector<InequalityRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["direction"] = r.direction;
    j["margin"] = r.margin;
    j["verdict"] = verdict_name(r.verdict);
    j["semantics"] = semantics_name(r.semantics);
    j["inputs_digest"] = r.inputs_digest;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

std::string report_table(const std::vector<InequalityRecord>& records) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-36s %14s %3s %14s %12s %-15s %s\n", "check", "lhs", "dir",
                "rhs", "margin", "verdict", "semantics");
  os << line;
  for (const auto& r : records) {
    std::snprintf(line, sizeof(line), "%-36s %14.6g %3s %14.6g %12.4g %-15s %s\n",
                  r.name.c_str(), r.lhs, r.direction.c_str(), r.rhs, r.margin,
                  verdict_name(r.verdict).c_str(), semantics_name(r.semantics).c_str());
    os << line;
  }
  return os.str();
}

}  // namespace sep

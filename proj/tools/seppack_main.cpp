// seppack: generate / verify / optimize / check / render rho-separable
// translative packings over a stable JSON packing-file format.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "seppack/density.hpp"
#include "seppack/harness.hpp"
#include "seppack/hull.hpp"
#include "seppack/optimizer.hpp"
#include "seppack/packing_io.hpp"
#include "seppack/quermass.hpp"
#include "seppack/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitRender3d = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalArgs {
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = default (env / hardware)
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) sep::fail(sep::Errc::parse_error, "cannot write " + path);
  out << text;
}

int cmd_generate(const GlobalArgs& g, const std::string& shape, int n, const std::string& body,
                 double rho, const std::string& out) {
  sep::Body C = sep::parse_body_spec(body);
  sep::SepOptions so;
  so.threads = g.threads;
  sep::Packing P =
      sep::initial_configuration(n, C, rho, sep::initial_shape_from_name(shape), so);
  sep::PackingFile f(std::move(P));
  f.metadata["seed"] = std::to_string(g.seed);
  f.metadata["provenance"] = "generate --shape " + shape;
  if (out.empty())
    std::cout << sep::serialize_packing(f);
  else
    sep::save_packing(f, out);
  return kExitOk;
}

int cmd_verify(const GlobalArgs& g, const std::string& file, bool strict_global) {
  sep::PackingFile f = sep::load_packing(file);
  sep::SepOptions so;
  so.strict_global = strict_global;
  so.threads = g.threads;
  sep::PackingCheck pc = sep::check_packing(f.packing);
  if (!pc.ok) {
    std::cout << "FAIL: packing condition violated; " << pc.violations.size() << " pair(s)\n";
    for (const auto& v : pc.violations)
      std::printf("  pair (%d,%d): gauge distance %.12g < 2\n", v.i, v.j, v.norm);
    return kExitFail;
  }
  sep::RhoSepResult rs = sep::rho_separable(f.packing, so);
  if (!rs.separable) {
    std::cout << "FAIL: not rho-separable";
    if (rs.witness)
      std::printf("; witness: sub-packing of center %d, pair (%d,%d)", rs.witness->center,
                  rs.witness->pair.first, rs.witness->pair.second);
    std::cout << (rs.exact ? "" : " [heuristic]") << "\n";
    return kExitFail;
  }
  std::printf("PASS: valid %s-separable packing of %d translates (rho=%.12g)%s\n",
              rs.exact ? "rho" : "rho (heuristic)", f.packing.size(), f.packing.rho,
              strict_global ? " [strict-global]" : "");
  return kExitOk;
}

struct OptimizeArgs {
  std::string in_file;
  int n = 0;
  std::string body;
  double rho = 1.0;
  int i = 1;
  std::string shape = "round";
  double t0 = -1, cooling = 0.95, move_scale = 0.5;
  int epochs = 100, moves = -1, chains = 1;
  std::string out, trace;
  bool allow_volume = false;
};

int cmd_optimize(const GlobalArgs& g, const OptimizeArgs& a) {
  std::optional<sep::PackingFile> in;
  if (!a.in_file.empty()) in = sep::load_packing(a.in_file);

  const sep::Body C = in ? in->packing.body : sep::parse_body_spec(a.body);
  const double rho = in ? in->packing.rho : a.rho;
  const int n = in ? in->packing.size() : a.n;
  if (n < 2) throw UsageError("optimize: need n >= 2");
  if (a.i < 1 || a.i > C.dim() - (a.allow_volume ? 0 : 1))
    throw UsageError("optimize: --i out of range for this dimension");

  sep::AnnealSchedule sched;
  sched.initial_temperature = a.t0;
  sched.cooling_factor = a.cooling;
  sched.moves_per_epoch = a.moves;
  sched.epochs = a.epochs;
  sched.seed = g.seed;
  sched.move_scale = a.move_scale;
  sched.chains = a.chains;

  sep::MinimizeOptions mo;
  mo.sep.threads = g.threads;
  mo.init_shape = sep::initial_shape_from_name(a.shape);
  mo.allow_volume_objective = a.allow_volume;
  if (in) mo.init = &in->packing;

  sep::OptimizationResult res = sep::minimize_Mi(n, C, rho, a.i, sched, mo);

  sep::PackingFile f(res.packing);
  f.metadata["seed"] = std::to_string(g.seed);
  f.metadata["provenance"] = "optimize --i " + std::to_string(a.i);
  char obj[40];
  std::snprintf(obj, sizeof(obj), "%.17g", res.objective);
  f.metadata["objective"] = obj;
  if (a.out.empty())
    std::cout << sep::serialize_packing(f);
  else
    sep::save_packing(f, a.out);

  if (!a.trace.empty()) {
    std::string csv = "epoch,best,current,temperature\n";
    char line[160];
    for (const auto& t : res.trace) {
      std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n", t.epoch, t.best, t.current,
                    t.temperature);
      csv += line;
    }
    write_text(a.trace, csv);
  }
  std::printf("objective M_%d = %.12g (verified %s)\n", a.i, res.objective,
              res.verification_exact ? "exact" : "heuristic");
  return kExitOk;
}

int cmd_check(const GlobalArgs& g, const std::string& file, const std::string& suite, int i,
              const std::string& out, const std::string& table_path) {
  sep::PackingFile f = sep::load_packing(file);
  sep::Packing& P = f.packing;
  const int d = P.dim();
  if (i < 1 || i > d - 1) throw UsageError("check: --i out of range for this dimension");

  sep::SepOptions so;
  so.threads = g.threads;
  // precondition for every suite
  if (!sep::check_packing(P).ok)
    sep::fail(sep::Errc::unverified_packing, "check: packing condition violated");
  if (!sep::rho_separable(P, so).separable)
    sep::fail(sep::Errc::unverified_packing, "check: packing is not rho-separable");

  std::vector<sep::DensityTableEntry> table =
      table_path.empty() ? sep::builtin_density_table() : sep::load_density_table(table_path);
  sep::DensityEstimate delta = sep::reference_density(P.body, P.rho, &table);

  // recenter so the container/ball derivations below are origin-symmetric
  sep::Vec centroid{0, 0, 0};
  for (const auto& c : P.centers)
    for (int k = 0; k < 3; ++k) centroid[k] += c[k] / P.size();
  for (auto& c : P.centers)
    for (int k = 0; k < 3; ++k) c[k] -= centroid[k];
  double R_centers = 0;
  for (const auto& c : P.centers) R_centers = std::max(R_centers, sep::norm2(c));

  std::vector<sep::InequalityRecord> records;
  const bool want_exact = suite == "exact" || suite == "all";
  const bool want_cert = suite == "certified" || suite == "all";
  const bool want_thm = suite == "theorem" || suite == "all";
  if (!want_exact && !want_cert && !want_thm) throw UsageError("check: unknown suite " + suite);

  sep::Hull Q = sep::hull_of_packing(P);
  if (want_exact) {
    records.push_back(sep::check_stability(Q));
    records.push_back(sep::check_sr_vol(Q));
    for (auto& r : sep::af_ball_lower_bound(Q)) records.push_back(std::move(r));
  }
  if (want_cert) {
    sep::DensityBoundOptions ld;
    ld.sep = so;
    ld.uv.threads = sep::threads::resolve(g.threads);
    records.push_back(sep::check_density_bound(P, delta.upper, ld));
    // the file's own packing witnesses nu(C, rho, K) >= n and R_C <= R_centers
    if (R_centers > 0) {
      sep::Body K = sep::Body::make_ball(d, R_centers);
      for (auto& r : sep::check_nu_volume_sandwich(K, P.body, P.rho, P.size(), delta))
        records.push_back(std::move(r));
    }
    for (auto& r : sep::check_radius_bound(P.body, P.rho, P.size(), R_centers, delta))
      records.push_back(std::move(r));
    records.push_back(
        sep::check_ball_projection_bound(P.body, P.rho, P.size(), i, R_centers, delta));
  }
  if (want_thm) {
    sep::OptimizationResult asr{P, sep::mean_projection(Q, i), {}, true, true};
    for (auto& r : sep::check_theorem(P, i, asr, delta, R_centers))
      records.push_back(std::move(r));
  }

  sep::sort_report(records);
  std::string json = sep::report_json(records);
  if (out.empty())
    std::cout << json << "\n";
  else
    write_text(out, json + "\n");
  std::cerr << sep::report_table(records);

  for (const auto& r : records)
    if (r.semantics == sep::Semantics::exact && r.verdict == sep::Verdict::fail) return kExitFail;
  return kExitOk;
}

int cmd_render(const GlobalArgs& g, const std::string& file, const std::string& out,
               bool certificates) {
  sep::PackingFile f = sep::load_packing(file);
  if (f.packing.dim() != 2) {
    std::cerr << "render: 3D packings are not supported\n";
    return kExitRender3d;
  }
  sep::RenderOptions ro;
  ro.certificates = certificates;
  ro.sep.threads = g.threads;
  std::string svg = sep::render_svg(f.packing, ro);
  if (out.empty())
    std::cout << svg;
  else
    write_text(out, svg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rho-separable translative packings: construct, verify, optimize, measure"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--seed", g.seed, "global RNG seed");
  app.add_option("--threads", g.threads,
                 "worker threads (default: SEP_PACK_THREADS or all logical cores)");

  auto* gen = app.add_subcommand("generate", "write a verified seed construction");
  gen->fallthrough();
  std::string gen_shape = "grid", gen_body = "disk:1", gen_out;
  int gen_n = 0;
  double gen_rho = 1.0;
  gen->add_option("--shape", gen_shape, "round | sausage | grid")
      ->check(CLI::IsMember({"round", "sausage", "grid"}));
  gen->add_option("--n", gen_n, "number of translates")->required()->check(CLI::PositiveNumber);
  gen->add_option("--body", gen_body, "body spec, e.g. disk:1 square:1 hexagon:1 ball:1");
  gen->add_option("--rho", gen_rho, "separability parameter (>= 1)")
      ->check(CLI::Range(1.0, 1e9));
  gen->add_option("--out,-o", gen_out, "output packing file (stdout if omitted)");

  auto* ver = app.add_subcommand("verify", "verify a packing file");
  ver->fallthrough();
  std::string ver_file;
  bool ver_strict = false;
  ver->add_option("file", ver_file, "packing file")->required();
  ver->add_flag("--strict-global", ver_strict,
                "separating planes must avoid the whole packing, not only the sub-packing");

  auto* opt = app.add_subcommand("optimize", "anneal toward minimal M_i");
  opt->fallthrough();
  OptimizeArgs oa;
  opt->add_option("--in", oa.in_file, "starting packing file");
  opt->add_option("--n", oa.n, "number of translates (when no --in)");
  opt->add_option("--body", oa.body, "body spec (when no --in)");
  opt->add_option("--rho", oa.rho, "separability parameter (when no --in)")
      ->check(CLI::Range(1.0, 1e9));
  opt->add_option("--i", oa.i, "objective index (mean i-dimensional projection)")->required();
  opt->add_option("--shape", oa.shape, "initial shape: round | sausage | grid")
      ->check(CLI::IsMember({"round", "sausage", "grid"}));
  opt->add_option("--t0", oa.t0, "initial temperature (<=0: 5% of initial objective)");
  opt->add_option("--cooling", oa.cooling, "cooling factor per epoch")
      ->check(CLI::Range(1e-6, 0.999999));
  opt->add_option("--move-scale", oa.move_scale, "gaussian step as a fraction of r(C)");
  opt->add_option("--epochs", oa.epochs, "epochs")->check(CLI::PositiveNumber);
  opt->add_option("--moves-per-epoch", oa.moves, "moves per epoch (<=0: 200 n)");
  opt->add_option("--chains", oa.chains, "independent chains")->check(CLI::PositiveNumber);
  opt->add_flag("--allow-volume", oa.allow_volume, "permit the volume objective i = d");
  opt->add_option("--out,-o", oa.out, "output packing file (stdout if omitted)");
  opt->add_option("--trace", oa.trace, "per-epoch objective trace CSV");

  auto* chk = app.add_subcommand("check", "evaluate the inequality suite");
  chk->fallthrough();
  std::string chk_file, chk_suite = "all", chk_out, chk_table;
  int chk_i = 1;
  chk->add_option("file", chk_file, "packing file")->required();
  chk->add_option("--suite", chk_suite, "exact | certified | theorem | all")
      ->check(CLI::IsMember({"exact", "certified", "theorem", "all"}));
  chk->add_option("--i", chk_i, "mean projection index used by theorem-level checks");
  chk->add_option("--out,-o", chk_out, "report JSON output (stdout if omitted)");
  chk->add_option("--density-table", chk_table, "density reference table JSON");

  auto* ren = app.add_subcommand("render", "render a 2D packing to SVG");
  ren->fallthrough();
  std::string ren_file, ren_out;
  bool ren_certs = false;
  ren->add_option("file", ren_file, "packing file")->required();
  ren->add_option("--out,-o", ren_out, "SVG output (stdout if omitted)");
  ren->add_flag("--certificates", ren_certs, "draw pairwise separation lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (g.threads > 0) sep::threads::set_max(g.threads);

  try {
    if (gen->parsed()) return cmd_generate(g, gen_shape, gen_n, gen_body, gen_rho, gen_out);
    if (ver->parsed()) return cmd_verify(g, ver_file, ver_strict);
    if (opt->parsed()) return cmd_optimize(g, oa);
    if (chk->parsed()) return cmd_check(g, chk_file, chk_suite, chk_i, chk_out, chk_table);
    if (ren->parsed()) return cmd_render(g, ren_file, ren_out, ren_certs);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

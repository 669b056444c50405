#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "seppack/packing_io.hpp"
#include "seppack/svg.hpp"
#include "support/test_support.hpp"

using namespace sep;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_path = "/tmp/seppack_test_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(SEPPACK_CLI_PATH) + " " + args + " >" + out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("body spec parsing") {
  CHECK(parse_body_spec("disk:1").is_ball());
  CHECK(parse_body_spec("disk:2.5").radius() == 2.5);
  CHECK(parse_body_spec("ball:1").dim() == 3);
  CHECK(parse_body_spec("square:1").vertices().size() == 4);
  CHECK(parse_body_spec("hexagon:1").vertices().size() == 6);
  CHECK(parse_body_spec("cube:1").vertices().size() == 8);
  CHECK(parse_body_spec("octahedron:1").vertices().size() == 6);
  CHECK_THROWS_AS(parse_body_spec("blob:1"), Error);
  CHECK_THROWS_AS(parse_body_spec("disk:abc"), Error);
  CHECK_THROWS_AS(parse_body_spec("disk:-1"), Error);
}

TEST_CASE("packing file round trip") {
  Packing P(Body::unit_disk(), 1.0,
            {vec2(0, 0), vec2(2.0000000001, 0), vec2(0.1234567890123456789, 7.25)});
  PackingFile f(P);
  f.metadata["seed"] = "42";
  std::string text = serialize_packing(f);
  PackingFile g = parse_packing(text);
  CHECK(g.version == 1);
  CHECK(g.packing.rho == P.rho);
  REQUIRE(g.packing.size() == P.size());
  for (int k = 0; k < P.size(); ++k) {
    CHECK(g.packing.centers[k][0] == P.centers[k][0]);  // exact round trip
    CHECK(g.packing.centers[k][1] == P.centers[k][1]);
  }
  CHECK(g.metadata.at("seed") == "42");
  // serialization is stable
  CHECK(serialize_packing(g) == text);

  // polygonal bodies round trip too
  Packing Q(Body::regular_hexagon(1.0), 3.0, {vec2(0, 0), vec2(4, 0)});
  PackingFile fq(Q);
  PackingFile gq = parse_packing(serialize_packing(fq));
  CHECK(gq.packing.body.vertices().size() == 6);
  CHECK(serialize_packing(gq) == serialize_packing(fq));
}

TEST_CASE("packing file parse errors") {
  CHECK_THROWS_AS(parse_packing("not json"), Error);
  CHECK_THROWS_AS(parse_packing("{}"), Error);
  CHECK_THROWS_AS(parse_packing(R"({"version":1,"dimension":4,"body":{"kind":"disk","radius":1},"rho":1,"centers":[[0,0,0,0]]})"),
                  Error);
  CHECK_THROWS_AS(parse_packing(R"({"version":1,"dimension":2,"body":{"kind":"disk","radius":1},"rho":1,"centers":[[0,"x"]]})"),
                  Error);
  CHECK_THROWS_AS(parse_packing(R"({"version":1,"dimension":2,"body":{"kind":"disk","radius":1},"rho":0.5,"centers":[[0,0]]})"),
                  Error);
}

TEST_CASE("svg rendering") {
  std::vector<Vec> centers;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) centers.push_back(vec2(2.0 * x, 2.0 * y));
  Packing P(Body::unit_disk(), 6.0, centers);
  std::string svg = render_svg(P);
  CHECK(count_occurrences(svg, "<circle") == 11);  // 9 translates + inball + circumball
  CHECK(count_occurrences(svg, "id=\"hull\"") == 1);
  CHECK(svg.find("<line") == std::string::npos);

  RenderOptions certs;
  certs.certificates = true;
  std::string svg2 = render_svg(P, certs);
  CHECK(count_occurrences(svg2, "<line") >= 1);
  // deterministic output
  CHECK(render_svg(P, certs) == svg2);

  Packing P3(Body::make_ball(3, 1.0), 1.0, {vec3(0, 0, 0)});
  CHECK_THROWS_AS(render_svg(P3), Error);
}

TEST_CASE("cli generate / verify / exit codes") {
  RunResult gen = run_cli("generate --shape grid --n 9 --body disk:1 --rho 6 --out /tmp/sp_grid.json");
  CHECK(gen.exit_code == 0);
  PackingFile f = load_packing("/tmp/sp_grid.json");
  CHECK(f.packing.size() == 9);
  CHECK(f.packing.rho == 6.0);

  RunResult sausage = run_cli("generate --shape sausage --n 2 --body disk:1 --rho 1");
  CHECK(sausage.exit_code == 0);
  PackingFile fs = parse_packing(sausage.out);
  CHECK(fs.packing.centers[0][0] == 0.0);
  CHECK(fs.packing.centers[1][0] == 2.0);

  // usage error: n = 0
  CHECK(run_cli("generate --n 0 --body disk:1").exit_code == 64);

  RunResult ver = run_cli("verify /tmp/sp_grid.json");
  CHECK(ver.exit_code == 0);
  CHECK(ver.out.find("PASS") != std::string::npos);

  // the stricter reading also holds on the grid: axis lines avoid everyone
  RunResult strict = run_cli("verify /tmp/sp_grid.json --strict-global");
  CHECK(strict.exit_code == 0);

  // failing packing: hexagonal 7-cluster at rho 3
  {
    std::vector<Vec> c = {vec2(0, 0)};
    for (int k = 0; k < 6; ++k)
      c.push_back(vec2(2 * std::cos(kPi / 3 * k), 2 * std::sin(kPi / 3 * k)));
    save_packing(PackingFile(Packing(Body::unit_disk(), 3.0, c)), "/tmp/sp_hex.json");
  }
  RunResult bad = run_cli("verify /tmp/sp_hex.json");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("witness") != std::string::npos);

  // malformed file
  {
    std::ofstream out("/tmp/sp_bad.json");
    out << "{ nope";
  }
  CHECK(run_cli("verify /tmp/sp_bad.json").exit_code == 2);
  CHECK(run_cli("verify /tmp/sp_missing.json").exit_code == 2);
}

TEST_CASE("cli optimize and determinism") {
  std::string base =
      "optimize --n 12 --body disk:1 --rho 1 --i 1 --epochs 8 --moves-per-epoch 80 --seed 7 "
      "--threads 1";
  RunResult a = run_cli(base + " --out /tmp/sp_opt_a.json --trace /tmp/sp_tr_a.csv");
  RunResult b = run_cli(base + " --out /tmp/sp_opt_b.json --trace /tmp/sp_tr_b.csv");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp("/tmp/sp_opt_a.json") == slurp("/tmp/sp_opt_b.json"));  // byte-identical
  CHECK(slurp("/tmp/sp_tr_a.csv") == slurp("/tmp/sp_tr_b.csv"));
  CHECK(slurp("/tmp/sp_tr_a.csv").rfind("epoch,best,current,temperature\n", 0) == 0);

  // i out of range for d=2
  CHECK(run_cli("optimize --n 4 --body disk:1 --rho 1 --i 3").exit_code == 64);

  // default schedule reaches the two-disk optimum (tangent pair)
  RunResult two = run_cli("optimize --n 2 --body disk:1 --rho 1 --i 1 --seed 3 "
                          "--out /tmp/sp_opt2.json");
  CHECK(two.exit_code == 0);
  PackingFile f2 = load_packing("/tmp/sp_opt2.json");
  double obj = std::stod(f2.metadata.at("objective"));
  CHECK(obj == doctest::Approx(septest::kStadiumM1).epsilon(1e-6));
}

TEST_CASE("cli check and render") {
  run_cli("generate --shape grid --n 9 --body disk:1 --rho 6 --out /tmp/sp_grid9.json");
  RunResult chk = run_cli("check /tmp/sp_grid9.json --suite exact --out /tmp/sp_report.json");
  CHECK(chk.exit_code == 0);
  std::string report = slurp("/tmp/sp_report.json");
  CHECK(report.find("\"stability\"") != std::string::npos);
  CHECK(report.find("\"sr-vol\"") != std::string::npos);

  RunResult all = run_cli("check /tmp/sp_grid9.json --suite all");
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("density-bound") != std::string::npos);
  CHECK(all.out.find("radius-bound.certified") != std::string::npos);
  CHECK(all.out.find("theorem.threshold") != std::string::npos);

  // theorem suite on a sausage: not-applicable records, still exit 0
  run_cli("generate --shape sausage --n 2 --body disk:1 --rho 1 --out /tmp/sp_s2.json");
  RunResult thm = run_cli("check /tmp/sp_s2.json --suite theorem");
  CHECK(thm.exit_code == 0);
  CHECK(thm.out.find("not-applicable") != std::string::npos);

  // corrupted centers
  {
    std::ofstream out("/tmp/sp_corrupt.json");
    out << R"({"version":1,"dimension":2,"body":{"kind":"disk","radius":1},"rho":1,"centers":[[0,0],[1,0]]})";
  }
  CHECK(run_cli("check /tmp/sp_corrupt.json --suite exact").exit_code == 2);

  // table-file route matches the built-in bounds
  RunResult tbl = run_cli("check /tmp/sp_grid9.json --suite certified --density-table " +
                          std::string(SEPPACK_DATA_DIR) + "/density_table.json");
  CHECK(tbl.exit_code == 0);

  RunResult ren = run_cli("render /tmp/sp_grid9.json --out /tmp/sp_grid9.svg");
  CHECK(ren.exit_code == 0);
  CHECK(count_occurrences(slurp("/tmp/sp_grid9.svg"), "<circle") == 11);

  // polygonal bodies render as polygons
  save_packing(PackingFile(Packing(Body::square(1.0), 1.0, {vec2(0, 0), vec2(2, 0)})),
               "/tmp/sp_sq.json");
  RunResult rsq = run_cli("render /tmp/sp_sq.json --out /tmp/sp_sq.svg");
  CHECK(rsq.exit_code == 0);
  CHECK(count_occurrences(slurp("/tmp/sp_sq.svg"), "<polygon") == 2);

  // d=3 input: exit 3
  save_packing(PackingFile(Packing(Body::make_ball(3, 1.0), 1.0, {vec3(0, 0, 0)})),
               "/tmp/sp_3d.json");
  CHECK(run_cli("render /tmp/sp_3d.json --out /tmp/sp_3d.svg").exit_code == 3);
}

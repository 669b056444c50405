#include "seppack/packing_io.hpp"

#include <fstream>

#include <json.hpp>

namespace sep {

using nlohmann::json;

Body parse_body_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  double param = 1.0;
  if (colon != std::string::npos) {
    try {
      size_t used = 0;
      param = std::stod(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(Errc::parse_error, "body spec: bad parameter in '" + spec + "'");
    }
  }
  if (!(param > 0)) fail(Errc::parse_error, "body spec: parameter must be positive");
  if (kind == "disk") return Body::make_ball(2, param);
  if (kind == "ball") return Body::make_ball(3, param);
  if (kind == "square") return Body::square(param);
  if (kind == "hexagon") return Body::regular_hexagon(param);
  if (kind == "cube") return Body::cube(param);
  if (kind == "octahedron") return Body::octahedron(param);
  fail(Errc::parse_error, "body spec: unknown kind '" + kind + "'");
}

namespace {

Vec parse_vec(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || (int)j.size() != dim)
    fail(Errc::parse_error, "packing file: " + where + " must be an array of " +
                                std::to_string(dim) + " numbers");
  Vec v{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    if (!j[k].is_number()) fail(Errc::parse_error, "packing file: " + where + " has a non-number");
    v[k] = j[k].get<double>();
  }
  return v;
}

}  // namespace

PackingFile parse_packing(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, std::string("packing file: ") + e.what());
  }
  try {
    int version = j.at("version").get<int>();
    if (version != 1) fail(Errc::parse_error, "packing file: unsupported version");
    int dim = j.at("dimension").get<int>();
    if (dim != 2 && dim != 3) fail(Errc::parse_error, "packing file: dimension must be 2 or 3");

    const json& jb = j.at("body");
    std::string kind = jb.at("kind").get<std::string>();
    Body body = [&]() {
      if (kind == "disk" || kind == "ball") {
        double r = jb.at("radius").get<double>();
        if (!(r > 0)) fail(Errc::parse_error, "packing file: body.radius must be positive");
        return Body::make_ball(dim, r);
      }
      if (kind == "polygon" || kind == "polytope") {
        std::vector<Vec> verts;
        for (const auto& v : jb.at("vertices")) verts.push_back(parse_vec(v, dim, "body.vertices"));
        return dim == 2 ? Body::make_polygon(std::move(verts))
                        : Body::make_polytope(std::move(verts));
      }
      fail(Errc::parse_error, "packing file: unknown body.kind '" + kind + "'");
    }();
    if (body.dim() != dim) fail(Errc::parse_error, "packing file: body/dimension mismatch");

    double rho = j.at("rho").get<double>();
    std::vector<Vec> centers;
    for (const auto& c : j.at("centers")) centers.push_back(parse_vec(c, dim, "centers"));

    PackingFile f(Packing(std::move(body), rho, std::move(centers)));
    f.version = version;
    if (j.contains("metadata"))
      for (auto& [k, v] : j.at("metadata").items())
        f.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return f;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("packing file: ") + e.what());
  } catch (const Error&) {
    throw;
  }
}

PackingFile load_packing(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "packing file: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_packing(text);
}

std::string serialize_packing(const PackingFile& f) {
  json j;
  j["version"] = f.version;
  const Packing& P = f.packing;
  const int dim = P.dim();
  j["dimension"] = dim;
  json jb;
  if (P.body.is_ball()) {
    jb["kind"] = dim == 2 ? "disk" : "ball";
    jb["radius"] = P.body.radius();
  } else {
    jb["kind"] = dim == 2 ? "polygon" : "polytope";
    json verts = json::array();
    for (const auto& v : P.body.vertices()) {
      json vv = json::array();
      for (int k = 0; k < dim; ++k) vv.push_back(v[k]);
      verts.push_back(std::move(vv));
    }
    jb["vertices"] = std::move(verts);
  }
  j["body"] = std::move(jb);
  j["rho"] = P.rho;
  json centers = json::array();
  for (const auto& c : P.centers) {
    json cc = json::array();
    for (int k = 0; k < dim; ++k) cc.push_back(c[k]);
    centers.push_back(std::move(cc));
  }
  j["centers"] = std::move(centers);
  if (!f.metadata.empty()) {
    json md;
    for (const auto& [k, v] : f.metadata) md[k] = v;
    j["metadata"] = std::move(md);
  }
  return j.dump() + "\n";
}

void save_packing(const PackingFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "packing file: cannot write " + path);
  out << serialize_packing(f);
}

}  // namespace sep

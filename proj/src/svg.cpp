#include "seppack/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "seppack/hull.hpp"

namespace sep {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Packing& P, const RenderOptions& opt) {
  if (P.dim() != 2) fail(Errc::unsupported_method, "render_svg: d=2 only");
  const Body& C = P.body;

  Hull Q = hull_of_packing(P);
  BallResult in = inradius_hull(Q);
  BallResult out = circumradius_hull(Q);

  double pad = out.radius + opt.margin * C.circumradius();
  double x0 = out.center[0] - pad, y0 = out.center[1] - pad, w = 2 * pad;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << " " << num(y0)
     << " " << num(w) << " " << num(w) << "\">\n";
  // flip y so the math orientation is upright
  os << "<g transform=\"translate(0," << num(2 * y0 + w) << ") scale(1,-1)\">\n";

  const char* body_style = "fill=\"#9ecae9\" stroke=\"#305070\" stroke-width=\"0.03\"";
  os << "<g id=\"translates\">\n";
  if (C.is_ball()) {
    for (const auto& c : P.centers)
      os << "<circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\""
         << num(C.radius()) << "\" " << body_style << "/>\n";
  } else {
    for (const auto& c : P.centers) {
      os << "<polygon points=\"";
      bool first = true;
      for (const auto& v : C.vertices()) {
        if (!first) os << " ";
        first = false;
        os << num(c[0] + v[0]) << "," << num(c[1] + v[1]);
      }
      os << "\" " << body_style << "/>\n";
    }
  }
  os << "</g>\n";

  // hull outline: for ball bodies stroke the center hull with a round join of
  // width 2r, which is exactly the outer parallel boundary
  if (Q.hull_dim >= 1) {
    os << "<path id=\"hull\" d=\"M";
    for (size_t k = 0; k < Q.verts.size(); ++k)
      os << (k ? " L" : " ") << num(Q.verts[k][0]) << " " << num(Q.verts[k][1]);
    os << " Z\" fill=\"none\" stroke=\"#d08030\" stroke-width=\""
       << num(Q.offset > 0 ? 2 * Q.offset : 0.05)
       << "\" stroke-linejoin=\"round\" stroke-opacity=\"0.45\"/>\n";
  }

  os << "<circle id=\"inball\" cx=\"" << num(in.center[0]) << "\" cy=\"" << num(in.center[1])
     << "\" r=\"" << num(in.radius)
     << "\" fill=\"none\" stroke=\"#2a9d4e\" stroke-width=\"0.04\"/>\n";
  os << "<circle id=\"circumball\" cx=\"" << num(out.center[0]) << "\" cy=\""
     << num(out.center[1]) << "\" r=\"" << num(out.radius)
     << "\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"0.04\"/>\n";

  if (opt.certificates) {
    os << "<g id=\"certificates\">\n";
    std::vector<int> all(P.size());
    for (int k = 0; k < P.size(); ++k) all[k] = k;
    SepOptions so = opt.sep;
    for (int a = 0; a < P.size(); ++a)
      for (int b = a + 1; b < P.size(); ++b) {
        PairSepResult r = pair_separable(P, all, a, b, so);
        if (!r.feasible) continue;
        const Hyperplane& pl = r.cert->plane;
        // draw the line {x . n = b} clipped to the viewport by length
        Vec t = vec2(-pl.normal[1], pl.normal[0]);
        Vec base = pl.offset * pl.normal;
        Vec p1 = base + (2 * pad) * t, p2 = base - (2 * pad) * t;
        os << "<line x1=\"" << num(p1[0]) << "\" y1=\"" << num(p1[1]) << "\" x2=\""
           << num(p2[0]) << "\" y2=\"" << num(p2[1])
           << "\" stroke=\"#777777\" stroke-width=\"0.02\" stroke-dasharray=\"0.2,0.1\"/>\n";
      }
    os << "</g>\n";
  }

  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace sep

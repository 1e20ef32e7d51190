#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rotset::cli {

namespace {

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

/// Andrew's monotone chain.
std::vector<Pt> hull2d(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg(const PolytopeUnion& u, std::size_t x, std::size_t y,
                       const std::vector<std::vector<double>>& averages) {
  std::vector<std::vector<Pt>> polys;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  auto grow = [&](const Pt& p) {
    lo_x = std::min(lo_x, p.first);
    hi_x = std::max(hi_x, p.first);
    lo_y = std::min(lo_y, p.second);
    hi_y = std::max(hi_y, p.second);
  };
  for (const auto& piece : u.pieces()) {
    std::vector<Pt> pts;
    for (const auto& v : piece.polytope.vertices()) {
      auto d = v.to_doubles();
      pts.emplace_back(d.at(x), d.at(y));
      grow(pts.back());
    }
    polys.push_back(hull2d(std::move(pts)));
  }
  for (const auto& a : averages) grow({a.at(x), a.at(y)});
  const double size = 400, pad = 20;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  auto sx = [&](double v) { return num(pad + (v - lo_x) / span * size); };
  auto sy = [&](double v) { return num(pad + (hi_y - v) / span * size); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
     << "\">\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    os << "  <polygon fill=\"#4a90e2\" fill-opacity=\"0.25\" stroke=\"#1a4d8f\" points=\"";
    for (std::size_t k = 0; k < polys[i].size(); ++k)
      os << (k ? " " : "") << sx(polys[i][k].first) << ',' << sy(polys[i][k].second);
    os << "\"><title>" << u.pieces()[i].tag << "</title></polygon>\n";
  }
  if (!averages.empty()) {
    os << "  <polyline fill=\"none\" stroke=\"#d0021b\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < averages.size(); ++k)
      os << (k ? " " : "") << sx(averages[k].at(x)) << ',' << sy(averages[k].at(y));
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rotset::cli

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace hypdel::io {

namespace {

struct P2 {
  double x = 0.0, y = 0.0;
};

// Generalized circle in chart coordinates: a circle, or the line a.p = d.
struct GCircle {
  bool line = false;
  P2 c;
  double r = 0.0;
  P2 a;
  double d = 0.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

DVec cross(const DVec& p, const DVec& q) {
  return DVec{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

DVec unit_space_like(const DVec& v) { return v * (1.0 / std::sqrt(std::max(minkowski(v, v), 1e-300))); }

class Canvas {
public:
  Canvas(Model model, const std::vector<DVec>& pts) : model_(model) {
    if (model == Model::poincare_ball) {
      width_ = height_ = 520;
      scale_ = 240;
      ox_ = 260;
      oy_ = 260;
      return;
    }
    double amin = -1, amax = 1, ymax = 1;
    bool first = true;
    for (const DVec& x : pts) {
      auto p = chart(x);
      if (!p) continue;
      if (first) {
        amin = amax = p->x;
        ymax = p->y;
        first = false;
      }
      amin = std::min(amin, p->x);
      amax = std::max(amax, p->x);
      ymax = std::max(ymax, p->y);
    }
    double hw = std::max({(amax - amin) / 2, ymax, 1e-6}) * 1.25;
    width_ = 640;
    height_ = 400;
    scale_ = std::min((width_ - 40) / (2 * hw), (height_ - 40) / (1.25 * ymax));
    ox_ = width_ / 2.0 - (amin + amax) / 2 * scale_;
    oy_ = height_ - 20.0;
  }

  Model model() const { return model_; }
  double width() const { return width_; }
  double height() const { return height_; }
  double scale() const { return scale_; }
  double baseline() const { return oy_; }

  P2 screen(P2 p) const { return {ox_ + p.x * scale_, oy_ - p.y * scale_}; }
  double far() const { return 20.0 * std::max(width_, height_) / scale_; }

  /// Chart coordinates of a point of H^2 or of an ideal point (light-like
  /// x); nullopt for the point at infinity of the half-plane.
  std::optional<P2> chart(const DVec& x) const {
    bool ideal = std::abs(minkowski(x, x)) < 1e-9 * dot(x, x);
    if (model_ == Model::poincare_ball) {
      double den = ideal ? x[0] : x[0] + 1.0;
      return P2{x[1] / den, x[2] / den};
    }
    double g = x[0] - x[1];
    if (std::abs(g) <= 1e-12 * std::abs(x[0])) return std::nullopt;
    return ideal ? P2{x[2] / g, 0.0} : P2{x[2] / g, 1.0 / g};
  }

  /// Image of the plane {x o u = c}.
  GCircle circle(const DVec& u, double c) const {
    GCircle g;
    double scale = std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]) + std::abs(c);
    if (model_ == Model::poincare_ball) {
      double k = c - u[0];
      if (std::abs(k) <= 1e-12 * scale) {
        g.line = true;
        g.a = {u[1], u[2]};
        g.d = (u[0] + c) / 2;
      } else {
        g.c = {-u[1] / k, -u[2] / k};
        g.r = std::sqrt(std::max(0.0, g.c.x * g.c.x + g.c.y * g.c.y + (u[0] + c) / k));
      }
      return g;
    }
    double k = u[1] - u[0];
    if (std::abs(k) <= 1e-12 * scale) {
      g.line = true;
      g.a = {2 * u[2], -2 * c};
      g.d = u[0] + u[1];
    } else {
      g.c = {-u[2] / k, c / k};
      g.r = std::sqrt(std::max(0.0, g.c.x * g.c.x + g.c.y * g.c.y + (u[0] + u[1]) / k));
    }
    return g;
  }

private:
  Model model_;
  double width_ = 0, height_ = 0, scale_ = 1, ox_ = 0, oy_ = 0;
};

struct Style {
  const char* stroke;
  double width;
  const char* dash;
};

void attrs(std::ostringstream& os, const Style& s) {
  os << " fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\"" << num(s.width) << "\"";
  if (s.dash) os << " stroke-dasharray=\"" << s.dash << "\"";
}

void full_circle(std::ostringstream& os, const Canvas& cv, const GCircle& g, const Style& s) {
  if (!g.line) {
    P2 c = cv.screen(g.c);
    os << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(g.r * cv.scale()) << "\"";
    attrs(os, s);
    os << "/>\n";
    return;
  }
  double n2 = g.a.x * g.a.x + g.a.y * g.a.y;
  if (n2 == 0) return;
  P2 p0{g.a.x * g.d / n2, g.a.y * g.d / n2};
  P2 dir{-g.a.y / std::sqrt(n2), g.a.x / std::sqrt(n2)};
  double L = cv.far();
  P2 a = cv.screen({p0.x - L * dir.x, p0.y - L * dir.y});
  P2 b = cv.screen({p0.x + L * dir.x, p0.y + L * dir.y});
  os << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
     << "\"";
  attrs(os, s);
  os << "/>\n";
}

// Chart point of x, with the half-plane's point at infinity replaced by a
// far point straight above `toward`.
P2 endpoint(const Canvas& cv, const DVec& x, P2 toward) {
  if (auto p = cv.chart(x)) return *p;
  return {toward.x, cv.far()};
}

// Path data of the geodesic arcs through the given points of H^2 or its
// boundary, in order; consecutive points share one geodesic.
std::string geodesic_path(const Canvas& cv, const std::vector<DVec>& pts) {
  std::ostringstream os;
  std::vector<P2> ch;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    P2 toward = ch.empty() ? P2{} : ch.back();
    if (ch.empty() && !cv.chart(pts[0]) && pts.size() > 1) toward = endpoint(cv, pts[1], {});
    ch.push_back(endpoint(cv, pts[i], toward));
  }
  P2 s0 = cv.screen(ch[0]);
  os << "M" << num(s0.x) << " " << num(s0.y);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    P2 a = cv.screen(ch[i - 1]), b = cv.screen(ch[i]);
    DVec u = cross(pts[i - 1], pts[i]);
    u = DVec{u[0], -u[1], -u[2]};
    GCircle g = cv.circle(u, 0.0);
    if (g.line || !cv.chart(pts[i - 1]) || !cv.chart(pts[i])) {
      os << " L" << num(b.x) << " " << num(b.y);
      continue;
    }
    P2 c = cv.screen(g.c);
    double crs = (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
    double r = g.r * cv.scale();
    os << " A" << num(r) << " " << num(r) << " 0 0 " << (crs > 0 ? 1 : 0) << " " << num(b.x) << " " << num(b.y);
  }
  return os.str();
}

void path(std::ostringstream& os, const std::string& d, const Style& s) {
  os << "<path d=\"" << d << "\"";
  attrs(os, s);
  os << "/>\n";
}

const Style kMetric{"#1f77b4", 1.5, nullptr};
const Style kHoro{"#2ca02c", 1.5, "6 3"};
const Style kEquidistant{"#d62728", 1.5, "2 3"};
const Style kAxis{"#d62728", 0.8, "8 4"};
const Style kGeodesicSphere{"#7f7f7f", 1.5, nullptr};
const Style kEdge{"#000000", 1.2, nullptr};
const Style kEdgeNonDual{"#888888", 1.0, "4 2"};
const Style kVoronoi{"#9467bd", 1.2, nullptr};

}  // namespace

std::string render_svg(const TessellationFile& t, Model model) {
  if (t.dim != 2) throw GeometryError("render needs a tessellation of H^2, got dimension " + std::to_string(t.dim));
  if (model != Model::poincare_ball && model != Model::upper_half_space)
    throw GeometryError("render model must be poincare or halfplane");

  std::vector<DVec> sites;
  for (const QVec& s : t.sites) sites.push_back(to_double(s));
  std::vector<DVec> frame = sites;
  if (t.voronoi)
    for (const VoronoiRecord& v : *t.voronoi)
      if (v.dim == 0) frame.push_back(v.point);
  Canvas cv(model, frame);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cv.width()) << "\" height=\""
     << num(cv.height()) << "\" viewBox=\"0 0 " << num(cv.width()) << " " << num(cv.height()) << "\">\n";
  os << "<metadata>" << kToolName << " " << kToolVersion << " " << to_string(model)
     << "; geometry computed in double precision</metadata>\n";
  os << "<defs><clipPath id=\"domain\">";
  if (model == Model::poincare_ball) {
    P2 c = cv.screen({0, 0});
    os << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(cv.scale()) << "\"/>";
  } else {
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(cv.width()) << "\" height=\"" << num(cv.baseline()) << "\"/>";
  }
  os << "</clipPath></defs>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(cv.width()) << "\" height=\"" << num(cv.height())
     << "\" fill=\"#ffffff\"/>\n";
  if (model == Model::poincare_ball) {
    P2 c = cv.screen({0, 0});
    os << "<circle class=\"boundary\" cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(cv.scale())
       << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  } else {
    os << "<line class=\"boundary\" x1=\"0\" y1=\"" << num(cv.baseline()) << "\" x2=\"" << num(cv.width())
       << "\" y2=\"" << num(cv.baseline()) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }

  os << "<g clip-path=\"url(#domain)\">\n";
  os << "<g class=\"circumspheres\">\n";
  for (const CellRecord& c : t.cells) {
    if (c.dim != 2) continue;
    const SphereRecord& s = c.circumsphere;
    GCircle g = cv.circle(to_double(s.u), s.c.get_d());
    switch (s.kind) {
      case SphereKind::metric: full_circle(os, cv, g, kMetric); break;
      case SphereKind::horosphere: full_circle(os, cv, g, kHoro); break;
      case SphereKind::equidistant:
        full_circle(os, cv, g, kEquidistant);
        full_circle(os, cv, cv.circle(to_double(s.u), 0.0), kAxis);
        break;
      case SphereKind::totally_geodesic: full_circle(os, cv, g, kGeodesicSphere); break;
    }
  }
  os << "</g>\n";

  if (t.voronoi) {
    os << "<g class=\"voronoi\">\n";
    const auto& vs = *t.voronoi;
    for (const VoronoiRecord& v : vs) {
      if (v.dim != 1 || v.equalities.empty()) continue;
      const DVec& w = v.point;
      std::vector<const VoronoiRecord*> ends;
      for (int f : v.faces)
        if (f >= 0 && f < static_cast<int>(vs.size()) && vs[f].dim == 0) ends.push_back(&vs[f]);
      // Lorentz-orthogonal to w and to the bisector normal: the edge's tangent at w.
      DVec e = cross(w, to_double(v.equalities.front().u));
      DVec tan = unit_space_like(DVec{e[0], -e[1], -e[2]});
      std::vector<DVec> pts;
      if (ends.size() >= 2) {
        pts = {ends[0]->point, w, ends[1]->point};
      } else if (ends.size() == 1) {
        const DVec& a = ends[0]->point;
        double side = minkowski(w - a, tan) >= 0 ? 1.0 : -1.0;
        pts = {a, w, w + side * tan};
      } else {
        pts = {w - tan, w, w + tan};
      }
      path(os, geodesic_path(cv, pts), kVoronoi);
    }
    for (const VoronoiRecord& v : vs) {
      if (v.dim != 0) continue;
      auto p = cv.chart(v.point);
      if (!p) continue;
      P2 s = cv.screen(*p);
      os << "<rect x=\"" << num(s.x - 2.5) << "\" y=\"" << num(s.y - 2.5)
         << "\" width=\"5.000\" height=\"5.000\" fill=\"#9467bd\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"edges\">\n";
  std::vector<bool> dual(t.cells.size(), !t.dual.has_value());
  if (t.dual)
    for (int id : *t.dual)
      if (id >= 0 && id < static_cast<int>(dual.size())) dual[id] = true;
  for (const CellRecord& c : t.cells) {
    if (c.dim != 1 || c.vertices.size() != 2) continue;
    path(os, geodesic_path(cv, {sites[c.vertices[0]], sites[c.vertices[1]]}), dual[c.id] ? kEdge : kEdgeNonDual);
  }
  os << "</g>\n</g>\n";

  os << "<g class=\"sites\">\n";
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto p = cv.chart(sites[i]);
    if (!p) continue;
    P2 s = cv.screen(*p);
    os << "<circle cx=\"" << num(s.x) << "\" cy=\"" << num(s.y) << "\" r=\"3.000\" fill=\"#000000\"/>\n";
    os << "<text x=\"" << num(s.x + 5) << "\" y=\"" << num(s.y - 5) << "\" font-size=\"10\">" << i << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace hypdel::io

#include "hypdel/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace hypdel {

int Tessellation::find(const std::vector<int>& vertices) const {
  for (const auto& c : cells)
    if (c.vertices == vertices) return c.id;
  return -1;
}

std::vector<int> Tessellation::cells_of_dim(int dim) const {
  std::vector<int> out;
  for (const auto& c : cells)
    if (c.dim == dim) out.push_back(c.id);
  return out;
}

std::vector<QVec> exact_sites(const std::vector<HPoint>& sites) {
  std::vector<QVec> out;
  out.reserve(sites.size());
  for (const auto& s : sites) out.push_back(s.q());
  return out;
}

namespace {

Circumsphere sphere_for(const QPlane& plane, Mode mode, double eps) {
  if (mode == Mode::exact) return classify_plane(plane);
  return classify_plane(DPlane{to_double(plane.u), plane.c.get_d()}, eps);
}

// -1, 0, +1 for the side of the plane; +1 is the side away from the origin.
int far_side(const QPlane& plane, const QVec& x, Mode mode) {
  const Rational v = minkowski(x, plane.u) - plane.c;
  const int origin_side = -sgn(plane.c);
  if (mode == Mode::floating) {
    const double scale = std::sqrt(dot(to_double(x), to_double(x)) * dot(to_double(plane.u), to_double(plane.u)));
    if (std::abs(v.get_d()) <= 1e-9 * std::max(1.0, scale)) return 0;
  }
  const int s = sgn(v);
  if (s == 0) return 0;
  return s == origin_side ? -1 : 1;
}

}  // namespace

Tessellation delaunay_tessellation(const std::vector<HPoint>& sites, const DelaunayOptions& opts) {
  if (sites.empty()) throw GeometryError("Delaunay tessellation of an empty site set");
  Tessellation t;
  t.sites = sites;
  t.seed = opts.seed;
  t.n = static_cast<int>(sites.front().dim());
  t.mode = std::all_of(sites.begin(), sites.end(), [](const HPoint& s) { return s.exact(); }) ? Mode::exact
                                                                                                : Mode::floating;
  std::vector<QVec> lifted = exact_sites(sites);
  for (const auto& q : lifted)
    if (q.size() != lifted.front().size()) throw GeometryError("sites differ in dimension");
  if (t.mode == Mode::floating) {
    // Near-duplicates collapse onto their first copy before hulling.
    for (std::size_t i = 0; i < sites.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const DVec diff = sites[i].d() - sites[j].d();
        if (std::sqrt(dot(diff, diff)) < 1e-12 * std::max(1.0, std::sqrt(dot(sites[j].d(), sites[j].d())))) {
          lifted[i] = lifted[j];
          break;
        }
      }
    }
  }
  HullOptions hopts;
  hopts.seed = opts.seed;
  hopts.merge_eps = t.mode == Mode::floating ? opts.eps : 0.0;
  const Hull hull = build_hull(lifted, hopts);
  t.warnings = hull.warnings;
  t.representative = hull.representative;

  const std::vector<int> vis = visible_faces(hull);
  std::map<int, int> cell_of_face;
  for (int f : vis) {
    DelaunayCell c;
    c.id = static_cast<int>(t.cells.size());
    c.dim = hull.faces[f].dim;
    c.vertices = hull.faces[f].vertices;
    c.support = face_support_plane(hull, f);
    cell_of_face[f] = c.id;
    t.cells.push_back(std::move(c));
  }
  for (int f : vis) {
    auto& c = t.cells[cell_of_face[f]];
    for (int ch : hull.faces[f].children) {
      auto it = cell_of_face.find(ch);
      if (it != cell_of_face.end()) c.faces.push_back(it->second);
    }
    for (int p : hull.faces[f].parents) {
      auto it = cell_of_face.find(p);
      if (it != cell_of_face.end()) c.cofaces.push_back(it->second);
    }
    std::sort(c.faces.begin(), c.faces.end());
    std::sort(c.cofaces.begin(), c.cofaces.end());
    c.top = c.cofaces.empty();
    t.top_dim = std::max(t.top_dim, c.dim);
  }
  for (auto& c : t.cells) {
    c.sphere = sphere_for(c.support, t.mode, kClassifyEps);
    c.sphere.non_unique = c.dim < t.n;
  }
  return t;
}

Circumsphere cell_circumsphere(const Tessellation& t, int cell_id) {
  const DelaunayCell& c = t.cells.at(cell_id);
  Circumsphere s;
  if (c.dim == t.n) {
    std::vector<QVec> pts;
    for (int v : c.vertices) pts.push_back(t.sites[v].q());
    if (t.mode == Mode::exact) {
      s = classify_hypersphere(pts);
    } else {
      s = sphere_for(c.support, t.mode, kClassifyEps);
    }
  } else {
    s = sphere_for(c.support, t.mode, kClassifyEps);
    s.non_unique = true;
  }
  std::set<int> verts(c.vertices.begin(), c.vertices.end());
  for (std::size_t i = 0; i < t.sites.size(); ++i) {
    const int side = far_side(c.support, t.sites[i].q(), t.mode);
    const bool is_vertex = verts.count(static_cast<int>(i)) > 0;
    if (is_vertex && side != 0) throw GeometryError("cell vertex off its circumsphere");
    const bool duplicate = !t.representative.empty() && t.representative[i] != static_cast<int>(i);
    if (!is_vertex && !duplicate && side <= 0 &&
        !(t.mode == Mode::floating && side == 0))
      throw GeometryError("site " + std::to_string(i) + " inside the circumsphere of cell " + std::to_string(cell_id));
  }
  return s;
}

namespace {

struct Cone {
  std::vector<int> basis;                    // linearly independent vertices
  std::vector<std::vector<Rational>> walls;  // functionals on basis coordinates
};

std::optional<std::vector<Rational>> basis_coords(const std::vector<QVec>& pts, const std::vector<int>& basis,
                                                  const QVec& x) {
  Matrix<Rational> m(x.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < x.size(); ++r) m(r, c) = pts[basis[c]][r];
  return solve(m, x.coords());
}

Cone make_cone(const Tessellation& t, const std::vector<QVec>& pts, const DelaunayCell& cell) {
  Cone cone;
  for (int v : cell.vertices) {
    std::vector<int> trial = cone.basis;
    trial.push_back(v);
    Matrix<Rational> m(trial.size(), pts[v].size());
    for (std::size_t r = 0; r < trial.size(); ++r)
      for (std::size_t c = 0; c < pts[v].size(); ++c) m(r, c) = pts[trial[r]][c];
    if (rank(m) == trial.size()) cone.basis = std::move(trial);
  }
  for (int f : cell.faces) {
    const auto& face = t.cells[f];
    Matrix<Rational> m(face.vertices.size(), cone.basis.size());
    for (std::size_t r = 0; r < face.vertices.size(); ++r) {
      auto coords = basis_coords(pts, cone.basis, pts[face.vertices[r]]);
      for (std::size_t c = 0; c < cone.basis.size(); ++c) m(r, c) = (*coords)[c];
    }
    auto kernel = nullspace(m);
    if (kernel.size() != 1) continue;
    auto phi = kernel.front();
    for (int v : cell.vertices) {
      auto coords = basis_coords(pts, cone.basis, pts[v]);
      Rational s = 0;
      for (std::size_t c = 0; c < phi.size(); ++c) s += phi[c] * (*coords)[c];
      if (sgn(s) != 0) {
        if (sgn(s) < 0)
          for (auto& p : phi) p = -p;
        break;
      }
    }
    cone.walls.push_back(std::move(phi));
  }
  return cone;
}

bool in_cone(const std::vector<QVec>& pts, const Cone& cone, const QVec& x) {
  auto coords = basis_coords(pts, cone.basis, x);
  if (!coords) return false;
  if (cone.walls.empty()) {
    for (const auto& b : *coords)
      if (sgn(b) < 0) return false;
    return true;
  }
  for (const auto& w : cone.walls) {
    Rational s = 0;
    for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * (*coords)[c];
    if (sgn(s) < 0) return false;
  }
  return true;
}

}  // namespace

ComplexReport check_complex(const Tessellation& t, std::uint64_t seed, int samples) {
  ComplexReport rep;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };
  std::map<std::vector<int>, int> by_verts;
  for (const auto& c : t.cells) by_verts[c.vertices] = c.id;
  const int ncells = static_cast<int>(t.cells.size());

  // (a) faces of cells are cells.
  std::set<int> used_sites;
  for (const auto& c : t.cells) {
    for (int v : c.vertices) {
      used_sites.insert(v);
      if (!by_verts.count({v})) fail("(a) vertex " + std::to_string(v) + " of cell " + std::to_string(c.id) + " is not a 0-cell");
    }
    std::set<int> covered;
    for (int f : c.faces) {
      if (f < 0 || f >= ncells) {
        fail("(a) cell " + std::to_string(c.id) + " lists a missing face " + std::to_string(f));
        continue;
      }
      const auto& face = t.cells[f];
      if (face.dim != c.dim - 1 ||
          !std::includes(c.vertices.begin(), c.vertices.end(), face.vertices.begin(), face.vertices.end()))
        fail("(a) face " + std::to_string(f) + " of cell " + std::to_string(c.id) + " is not a facet of it");
      covered.insert(face.vertices.begin(), face.vertices.end());
    }
    if (c.dim >= 1 && covered != std::set<int>(c.vertices.begin(), c.vertices.end()))
      fail("(a) the faces of cell " + std::to_string(c.id) + " do not cover its vertices");
    // The boundary of a polytope is closed: every ridge lies in exactly two facets.
    if (c.dim == 1 && c.faces.size() != 2)
      fail("(a) edge " + std::to_string(c.id) + " does not have two endpoints");
    if (c.dim >= 2) {
      std::map<std::vector<int>, int> ridges;
      for (int f : c.faces) {
        if (f < 0 || f >= ncells) continue;
        for (int g : t.cells[f].faces)
          if (g >= 0 && g < ncells) ++ridges[t.cells[g].vertices];
      }
      for (const auto& [verts, count] : ridges)
        if (count != 2) {
          fail("(a) the boundary of cell " + std::to_string(c.id) + " is not closed");
          break;
        }
    }
  }

  // (b) pairwise intersections are faces of both.
  for (int i = 0; i < ncells; ++i) {
    for (int j = i + 1; j < ncells; ++j) {
      const auto& a = t.cells[i].vertices;
      const auto& b = t.cells[j].vertices;
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty() && !by_verts.count(common))
        fail("(b) cells " + std::to_string(i) + " and " + std::to_string(j) + " meet outside a common face");
    }
  }

  // (c) the cones over top cells cover the cone over the site hull.
  const std::vector<QVec> pts = exact_sites(t.sites);
  std::vector<Cone> cones;
  for (const auto& c : t.cells)
    if (c.top) cones.push_back(make_cone(t, pts, c));
  std::vector<int> site_list(used_sites.begin(), used_sites.end());
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples && !site_list.empty(); ++s) {
    QVec x(pts.front().size());
    for (int v : site_list) x += Rational(static_cast<long>(rng() % 16 + 1)) * pts[v];
    bool hit = std::any_of(cones.begin(), cones.end(), [&](const Cone& cone) { return in_cone(pts, cone, x); });
    if (!hit) {
      std::ostringstream os;
      os << "(c) sample " << s << " of the site hull lies in no top cell";
      fail(os.str());
      break;
    }
  }

  // (d) empty-sphere certificates.
  for (const auto& c : t.cells) {
    try {
      cell_circumsphere(t, c.id);
    } catch (const GeometryError& e) {
      fail(std::string("(d) ") + e.what());
    }
  }
  return rep;
}

}  // namespace hypdel

#include "hypdel/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace hypdel {

int lorentz_sign(const QVec& x, const DVec& xd, const QVec& n, const DVec& nd) {
  double v = -xd[0] * nd[0];
  double mag = std::abs(xd[0] * nd[0]);
  for (std::size_t i = 1; i < xd.size(); ++i) {
    v += xd[i] * nd[i];
    mag += std::abs(xd[i] * nd[i]);
  }
  if (v > 1e-14 * mag) return 1;
  if (v < -1e-14 * mag) return -1;
  return sgn(minkowski(x, n));
}

QPlane bisector(const HPoint& s0, const HPoint& s1) {
  if (s0 == s1) throw GeometryError("bisector of equal sites");
  std::vector<Rational> u = (s0.q() - s1.q()).coords();
  u = primitive_direction(u);
  return QPlane{QVec(std::move(u)), Rational(0)};
}

bool VoronoiCell::contains(const QVec& x) const {
  const DVec xd = to_double(x);
  for (std::size_t i = 0; i < equalities.size(); ++i)
    if (lorentz_sign(x, xd, equalities[i].u, dequalities[i]) != 0) return false;
  for (std::size_t i = 0; i < halfspaces.size(); ++i)
    if (lorentz_sign(x, xd, halfspaces[i].plane.u, dhalfspaces[i]) < 0) return false;
  return true;
}

bool VoronoiCell::contains_interior(const QVec& x) const {
  const DVec xd = to_double(x);
  for (std::size_t i = 0; i < equalities.size(); ++i)
    if (lorentz_sign(x, xd, equalities[i].u, dequalities[i]) != 0) return false;
  for (std::size_t i = 0; i < halfspaces.size(); ++i)
    if (lorentz_sign(x, xd, halfspaces[i].plane.u, dhalfspaces[i]) <= 0) return false;
  return true;
}

int VoronoiDiagram::find(const std::vector<int>& s) const {
  for (const auto& c : cells)
    if (c.sites == s) return c.id;
  return -1;
}

std::vector<int> nearest_sites(const Tessellation& t, const QVec& x) {
  const DVec xd = to_double(x);
  const std::size_t m = t.sites.size();
  // Float values with error bounds; anything whose upper bound reaches the
  // largest lower bound is decided exactly.
  std::vector<double> val(m), err(m);
  double floor = -HUGE_VAL;
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.representative.empty() && t.representative[i] != static_cast<int>(i)) continue;
    const DVec& s = t.sites[i].d();
    double v = -xd[0] * s[0], a = std::abs(xd[0] * s[0]);
    for (std::size_t j = 1; j < xd.size(); ++j) {
      v += xd[j] * s[j];
      a += std::abs(xd[j] * s[j]);
    }
    val[i] = v;
    err[i] = 1e-14 * a;
    floor = std::max(floor, v - err[i]);
  }
  std::vector<int> cand;
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.representative.empty() && t.representative[i] != static_cast<int>(i)) continue;
    if (val[i] + err[i] >= floor) cand.push_back(static_cast<int>(i));
  }
  if (cand.size() == 1) return cand;
  std::vector<int> out;
  Rational top;
  for (int i : cand) {
    const Rational v = minkowski(x, t.sites[i].q());
    if (out.empty() || v > top) {
      out = {i};
      top = v;
    } else if (v == top) {
      out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Sites sharing a Delaunay cell with s. The Voronoi cell of s is cut out by
// the bisectors with these alone.
std::vector<std::set<int>> cell_neighbours(const Tessellation& t) {
  std::vector<std::set<int>> nb(t.sites.size());
  for (const auto& c : t.cells) {
    if (!c.top) continue;
    for (int a : c.vertices)
      for (int b : c.vertices)
        if (a != b) nb[a].insert(b);
  }
  return nb;
}

// A future time-like vector strictly on the far side of the cell's support
// plane from every other site, up to the sign convention: x o (s0 - t) > 0.
QVec oriented_support(const DelaunayCell& c) {
  return sgn(c.support.c) > 0 ? QVec(-c.support.u) : c.support.u;
}

bool time_like_future(const QVec& x) {
  return sgn(x[0]) > 0 && sgn(minkowski(x, x)) < 0;
}

bool nearest_set_is(const Tessellation& t, const QVec& x, const std::vector<int>& g) {
  if (!time_like_future(x)) return false;
  return nearest_sites(t, x) == g;
}

// Point (1, k) with minimal |k| satisfying the closed system of the face of
// cell c; a point with |k| < 1 exists iff the face is nonempty in H^n.
std::optional<QVec> min_norm_point(const Tessellation& t, const DelaunayCell& c,
                                   const std::vector<std::set<int>>& nb) {
  const std::size_t n = static_cast<std::size_t>(t.n);
  const QVec& s0 = t.sites[c.vertices.front()].q();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t i = 1; i < c.vertices.size(); ++i) {
    const QVec d = t.sites[c.vertices[i]].q() - s0;
    rows.emplace_back(d.coords().begin() + 1, d.coords().end());
    rhs.push_back(d[0]);
  }
  std::size_t eq_rank = 0;
  if (!rows.empty()) {
    Matrix<Rational> m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) m(r, j) = rows[r][j];
    eq_rank = rank(m);
  }
  std::set<int> others;
  for (int v : c.vertices) others.insert(nb[v].begin(), nb[v].end());
  for (int v : c.vertices) others.erase(v);
  std::vector<std::vector<Rational>> ineq;
  std::vector<Rational> alpha;
  for (int o : others) {
    if (!t.representative.empty() && t.representative[o] != o) continue;
    const QVec d = s0 - t.sites[o].q();
    ineq.emplace_back(d.coords().begin() + 1, d.coords().end());
    alpha.push_back(d[0]);
  }
  auto feasible = [&](const std::vector<Rational>& k) {
    for (std::size_t i = 0; i < ineq.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += ineq[i][j] * k[j];
      if (s < alpha[i]) return false;
    }
    return true;
  };
  std::optional<QVec> result;
  std::vector<int> pick;
  // Enumerates active sets of growing size; stops at the first feasible
  // candidate inside the unit ball.
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) -> bool {
    if (left == 0) {
      const std::size_t r = rows.size() + pick.size();
      std::vector<const std::vector<Rational>*> act;
      std::vector<Rational> b;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        act.push_back(&rows[i]);
        b.push_back(rhs[i]);
      }
      for (int p : pick) {
        act.push_back(&ineq[p]);
        b.push_back(alpha[p]);
      }
      std::vector<Rational> k(n, Rational(0));
      if (r > 0) {
        Matrix<Rational> g(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) {
            Rational s = 0;
            for (std::size_t q = 0; q < n; ++q) s += (*act[i])[q] * (*act[j])[q];
            g(i, j) = s;
          }
        auto y = solve(g, b);
        if (!y) return false;
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t q = 0; q < n; ++q) k[q] += (*y)[i] * (*act[i])[q];
      }
      Rational norm = 0;
      for (const auto& v : k) norm += v * v;
      if (norm < 1 && feasible(k)) {
        std::vector<Rational> x{Rational(1)};
        x.insert(x.end(), k.begin(), k.end());
        result = QVec(std::move(x));
        return true;
      }
      return false;
    }
    for (std::size_t i = start; i < ineq.size(); ++i) {
      pick.push_back(static_cast<int>(i));
      if (rec(i + 1, left - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  const std::size_t max_active = n > eq_rank ? n - eq_rank : 0;
  for (std::size_t size = 0; size <= std::min(max_active, ineq.size()); ++size) {
    pick.clear();
    if (rec(0, size)) break;
  }
  return result;
}

// Moves a point of the closed face into its relative interior.
std::optional<QVec> interior_witness(const Tessellation& t, const DelaunayCell& c, const QVec& closed_point) {
  const QVec w = oriented_support(c);
  std::vector<int> g;
  for (int v : c.vertices)
    if (t.representative.empty() || t.representative[v] == v) g.push_back(v);
  if (nearest_set_is(t, closed_point, g)) return closed_point;
  Rational eps(1);
  for (int it = 0; it < 256; ++it) {
    const QVec x = closed_point + eps * w;
    if (nearest_set_is(t, x, g)) return x;
    eps /= 2;
  }
  return std::nullopt;
}

struct DualInfo {
  bool dual = false;
  QVec witness;
};

std::vector<DualInfo> compute_duals(const Tessellation& t) {
  const auto nb = cell_neighbours(t);
  std::vector<DualInfo> info(t.cells.size());
  // Faces of a top cell with a metric circumsphere are dual; the sphere's
  // centre lies in the closure of each of their Voronoi faces.
  std::vector<std::optional<QVec>> centre(t.cells.size());
  for (const auto& c : t.cells) {
    if (!c.top || c.dim != t.n) continue;
    const QVec w = oriented_support(c);
    if (time_like_future(w)) centre[c.id] = w;
  }
  std::vector<std::optional<QVec>> closed(t.cells.size());
  for (int id = static_cast<int>(t.cells.size()) - 1; id >= 0; --id) {
    if (centre[id]) closed[id] = centre[id];
    if (closed[id]) {
      for (int f : t.cells[id].faces)
        if (!closed[f]) closed[f] = closed[id];
    }
  }
  for (const auto& c : t.cells) {
    std::optional<QVec> p = closed[c.id];
    if (!p) p = min_norm_point(t, c, nb);
    if (!p) continue;
    auto w = interior_witness(t, c, *p);
    if (!w) throw GeometryError("no interior witness for the Voronoi face of cell " + std::to_string(c.id));
    info[c.id].dual = true;
    info[c.id].witness = *w;
  }
  return info;
}

DVec normalized(const QVec& x) {
  DVec d = to_double(x);
  const double s = std::sqrt(-minkowski(d, d));
  return (1.0 / s) * d;
}

}  // namespace

bool is_geometric_dual(const Tessellation& t, int cell_id, QVec* witness) {
  const auto nb = cell_neighbours(t);
  const DelaunayCell& c = t.cells.at(cell_id);
  std::optional<QVec> p;
  for (const auto& top : t.cells) {
    if (!top.top || top.dim != t.n) continue;
    if (!std::includes(top.vertices.begin(), top.vertices.end(), c.vertices.begin(), c.vertices.end())) continue;
    const QVec w = oriented_support(top);
    if (time_like_future(w)) {
      p = w;
      break;
    }
  }
  if (!p) p = min_norm_point(t, c, nb);
  if (!p) return false;
  auto w = interior_witness(t, c, *p);
  if (!w) return false;
  if (witness) *witness = *w;
  return true;
}

VoronoiDiagram voronoi_diagram(const Tessellation& t) {
  VoronoiDiagram v;
  v.n = t.n;
  v.site_cell.assign(t.sites.size(), -1);
  const auto nb = cell_neighbours(t);
  const auto info = compute_duals(t);
  // Highest-dimensional Voronoi faces first: they are dual to vertices.
  std::vector<int> order;
  for (const auto& c : t.cells)
    if (info[c.id].dual) order.push_back(c.id);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.cells[a].dim < t.cells[b].dim; });
  for (int id : order) {
    const DelaunayCell& c = t.cells[id];
    VoronoiCell vc;
    vc.id = static_cast<int>(v.cells.size());
    vc.dim = t.n - c.dim;
    for (int s : c.vertices)
      if (t.representative.empty() || t.representative[s] == s) vc.sites.push_back(s);
    const HPoint& s0 = t.sites[vc.sites.front()];
    for (std::size_t i = 1; i < vc.sites.size(); ++i) {
      QPlane b = bisector(t.sites[vc.sites[i]], s0);
      vc.dequalities.push_back(to_double(b.u));
      vc.equalities.push_back(std::move(b));
    }
    std::set<int> others;
    for (int s : vc.sites) others.insert(nb[s].begin(), nb[s].end());
    for (int s : vc.sites) others.erase(s);
    for (int o : others) {
      if (!t.representative.empty() && t.representative[o] != o) continue;
      QPlane b = bisector(s0, t.sites[o]);
      vc.dhalfspaces.push_back(to_double(b.u));
      vc.halfspaces.push_back(HalfSpace<Rational>{std::move(b), Side::geq});
    }
    vc.witness = info[id].witness;
    vc.point = normalized(vc.witness);
    vc.dual_cell = id;
    if (vc.sites.size() == 1) v.site_cell[vc.sites.front()] = vc.id;
    v.pairs.push_back(DualPair{vc.id, id});
    v.cells.push_back(std::move(vc));
  }
  // V' is a facet of V when its site set is strictly larger and its
  // dimension one lower.
  for (auto& a : v.cells) {
    for (auto& b : v.cells) {
      if (b.dim != a.dim - 1) continue;
      if (std::includes(b.sites.begin(), b.sites.end(), a.sites.begin(), a.sites.end())) {
        a.faces.push_back(b.id);
        b.cofaces.push_back(a.id);
      }
    }
  }
  for (auto& a : v.cells) {
    std::sort(a.faces.begin(), a.faces.end());
    std::sort(a.cofaces.begin(), a.cofaces.end());
  }
  return v;
}

VoronoiDiagram voronoi_diagram(const std::vector<HPoint>& sites, const DelaunayOptions& opts) {
  return voronoi_diagram(delaunay_tessellation(sites, opts));
}

GeometricDual geometric_dual(const Tessellation&, const VoronoiDiagram& v) {
  GeometricDual g;
  g.pairs = v.pairs;
  for (const auto& p : v.pairs) g.cells.push_back(p.delaunay_cell_id);
  std::sort(g.cells.begin(), g.cells.end());
  std::sort(g.pairs.begin(), g.pairs.end(),
            [](const DualPair& a, const DualPair& b) { return a.delaunay_cell_id < b.delaunay_cell_id; });
  return g;
}

GeometricDual geometric_dual(const Tessellation& t) { return geometric_dual(t, voronoi_diagram(t)); }

ContravarianceReport check_contravariance(const Tessellation& t, const VoronoiDiagram& v) {
  ContravarianceReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };
  std::map<int, int> voronoi_of;
  for (const auto& p : v.pairs) voronoi_of[p.delaunay_cell_id] = p.voronoi_id;

  // Delaunay face closure.
  std::vector<std::set<int>> below(t.cells.size());
  for (const auto& c : t.cells) {
    std::vector<int> stack = c.faces;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      if (below[c.id].insert(f).second)
        for (int g : t.cells[f].faces) stack.push_back(g);
    }
  }

  for (const auto& vc : v.cells) {
    const auto& dc = t.cells.at(vc.dual_cell);
    if (vc.dim + dc.dim != t.n)
      fail("dimensions of Voronoi face " + std::to_string(vc.id) + " and its dual do not sum to n");
    if (!vc.contains_interior(vc.witness))
      fail("witness of Voronoi face " + std::to_string(vc.id) + " is not interior");
    if (nearest_sites(t, vc.witness) != vc.sites)
      fail("Voronoi face " + std::to_string(vc.id) + " is not realized by its sites");
  }

  // Inclusions of Voronoi faces reverse to face relations of their duals.
  for (const auto& a : v.cells) {
    for (const auto& b : v.cells) {
      if (a.id == b.id) continue;
      // b inside a?
      if (!a.contains(b.witness)) continue;
      if (!std::includes(b.sites.begin(), b.sites.end(), a.sites.begin(), a.sites.end())) {
        fail("Voronoi face " + std::to_string(b.id) + " lies in " + std::to_string(a.id) + " without a site inclusion");
        continue;
      }
      if (!below[b.dual_cell].count(a.dual_cell))
        fail("dual of Voronoi face " + std::to_string(a.id) + " is not a face of the dual of " + std::to_string(b.id));
    }
  }

  // Every face of a dual cell is dual to a Voronoi face containing V.
  for (const auto& vc : v.cells) {
    for (int f : below[vc.dual_cell]) {
      auto it = voronoi_of.find(f);
      if (it == voronoi_of.end()) {
        fail("face " + std::to_string(f) + " of dual cell " + std::to_string(vc.dual_cell) + " is not dual");
        continue;
      }
      if (!v.cells[it->second].contains(vc.witness))
        fail("Voronoi face " + std::to_string(it->second) + " does not contain face " + std::to_string(vc.id));
    }
  }
  return rep;
}

}  // namespace hypdel

#include "hypdel/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>

namespace hypdel {

namespace {

using Row = std::vector<Rational>;

Rational dotr(const Row& a, const Row& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Coordinates of the points in a basis of the affine span of `pts` around
// pts.front(): a pivot-column projection of the differences.
std::vector<Row> local_coordinates(const std::vector<Row>& pts) {
  const std::size_t d = pts.front().size();
  Matrix<Rational> m(pts.size() - 1, d);
  for (std::size_t r = 1; r < pts.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = pts[r][c] - pts[0][c];
  const auto ech = row_reduce(m);
  std::vector<Row> out;
  for (const auto& p : pts) {
    Row q;
    for (std::size_t c : ech.pivot_cols) q.push_back(p[c] - pts[0][c]);
    out.push_back(std::move(q));
  }
  return out;
}

// Faces of the polytope conv(pts[idx]), as sorted index lists, added to out
// together with the polytope itself.
void close_under_faces(const std::vector<Row>& pts, const std::vector<int>& idx, std::set<std::vector<int>>& out) {
  if (!out.insert(idx).second) return;
  if (idx.size() == 1) return;
  std::vector<Row> sub;
  for (int i : idx) sub.push_back(pts[i]);
  const auto loc = local_coordinates(sub);
  const std::size_t d = loc.front().size();
  if (d == 1) {
    // A segment: its endpoints.
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < loc.size(); ++i) {
      if (loc[i][0] < loc[lo][0]) lo = i;
      if (loc[i][0] > loc[hi][0]) hi = i;
    }
    close_under_faces(pts, {idx[lo]}, out);
    close_under_faces(pts, {idx[hi]}, out);
    return;
  }
  std::vector<int> pick;
  std::set<std::vector<int>> facets;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == d) {
      Matrix<Rational> m(d - 1, d);
      for (std::size_t r = 1; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = loc[pick[r]][c] - loc[pick[0]][c];
      auto ker = nullspace(m);
      if (ker.size() != 1) return;
      const Row& phi = ker.front();
      const Rational b = dotr(phi, loc[pick[0]]);
      int pos = 0, neg = 0;
      std::vector<int> on;
      for (std::size_t i = 0; i < loc.size(); ++i) {
        const int s = sgn(Rational(dotr(phi, loc[i]) - b));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
        if (s == 0) on.push_back(idx[i]);
      }
      if (pos == 0 || neg == 0) facets.insert(on);
      return;
    }
    for (std::size_t i = start; i < loc.size(); ++i) {
      pick.push_back(static_cast<int>(i));
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  for (const auto& f : facets) close_under_faces(pts, f, out);
}

}  // namespace

CellSet brute_force_delaunay(const std::vector<HPoint>& sites) {
  if (sites.empty()) throw GeometryError("no sites");
  if (sites.size() > 12) throw GeometryError("brute-force Delaunay is capped at 12 sites");
  for (const auto& s : sites)
    if (!s.exact()) throw GeometryError("brute-force Delaunay needs exact sites");
  // Distinct sites, keeping the first copy.
  std::vector<int> keep;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    bool dup = false;
    for (int k : keep) dup = dup || sites[k] == sites[i];
    if (!dup) keep.push_back(static_cast<int>(i));
  }
  std::vector<Row> pts(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) pts[i] = sites[i].q().coords();

  std::set<std::vector<int>> cells;
  if (keep.size() == 1) {
    cells.insert({keep.front()});
    return CellSet(cells.begin(), cells.end());
  }
  // Linear and affine rank of the sites.
  const std::size_t d = pts.front().size();
  Matrix<Rational> lin(keep.size(), d);
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) lin(r, c) = pts[keep[r]][c];
  const auto lin_ech = row_reduce(lin);
  std::vector<Row> kept;
  for (int k : keep) kept.push_back(pts[k]);
  const std::size_t affine_dim = local_coordinates(kept).front().size();
  if (affine_dim + 1 == lin_ech.rank()) {
    // The sites lie on one hyperplane section missing 0: one cell.
    std::vector<int> all(keep.begin(), keep.end());
    close_under_faces(pts, all, cells);
    return CellSet(cells.begin(), cells.end());
  }
  // Coordinates in the linear span (pivot columns of the site matrix).
  const std::size_t w = lin_ech.rank();
  std::vector<Row> wc(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t c : lin_ech.pivot_cols) wc[i].push_back(pts[i][c]);
  // Empty hyperspheres through w sites: planes {phi . x = b} with b != 0
  // and no site on the side of 0.
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == w) {
      Matrix<Rational> m(w - 1, w);
      for (std::size_t r = 1; r < w; ++r)
        for (std::size_t c = 0; c < w; ++c) m(r - 1, c) = wc[pick[r]][c] - wc[pick[0]][c];
      auto ker = nullspace(m);
      if (ker.size() != 1) return;
      const Row& phi = ker.front();
      const Rational b = dotr(phi, wc[pick[0]]);
      if (sgn(b) == 0) return;
      const int origin = -sgn(b);
      std::vector<int> on;
      for (int k : keep) {
        const int s = sgn(Rational(dotr(phi, wc[k]) - b));
        if (s == origin) return;
        if (s == 0) on.push_back(k);
      }
      close_under_faces(pts, on, cells);
      return;
    }
    for (std::size_t i = start; i < keep.size(); ++i) {
      pick.push_back(keep[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return CellSet(cells.begin(), cells.end());
}

CellSet poincare_euclidean_oracle(const std::vector<HPoint>& sites) {
  if (sites.empty()) return {};
  if (sites.front().dim() != 2) throw GeometryError("the Poincare-Euclidean oracle is planar");
  std::vector<std::array<Rational, 2>> p;
  for (const auto& s : sites) {
    if (!s.exact()) throw GeometryError("the Poincare-Euclidean oracle needs exact sites");
    auto c = to_poincare(s.q());
    if (c[0] * c[0] + c[1] * c[1] >= 1) throw GeometryError("site on the boundary");
    p.push_back({c[0], c[1]});
  }
  std::vector<int> keep;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    bool dup = false;
    for (int k : keep) dup = dup || (p[k] == p[i]);
    if (!dup) keep.push_back(static_cast<int>(i));
  }
  auto sq = [](const Rational& x, const Rational& y) { return Rational(x * x + y * y); };
  std::set<std::vector<int>> out;
  for (int k : keep) out.insert({k});

  // Edges: circles through a and b with every other site strictly outside,
  // centred on the bisector at m + tau d. Each site cuts tau to an open
  // half-line.
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      const auto& a = p[keep[i]];
      const auto& b = p[keep[j]];
      const Rational mx = (a[0] + b[0]) / 2, my = (a[1] + b[1]) / 2;
      const Rational dx = -(b[1] - a[1]), dy = b[0] - a[0];
      std::optional<Rational> lo, hi;
      bool empty = false;
      for (int k : keep) {
        if (k == keep[i] || k == keep[j]) continue;
        const auto& t = p[k];
        // |c - t|^2 > |c - a|^2  <=>  2 c.(a - t) > |a|^2 - |t|^2.
        const Rational ex = a[0] - t[0], ey = a[1] - t[1];
        const Rational coef = 2 * (dx * ex + dy * ey);
        const Rational rhs = sq(a[0], a[1]) - sq(t[0], t[1]) - 2 * (mx * ex + my * ey);
        if (sgn(coef) == 0) {
          if (sgn(rhs) >= 0) empty = true;
          continue;
        }
        const Rational bound = rhs / coef;
        if (sgn(coef) > 0) {
          if (!lo || bound > *lo) lo = bound;
        } else {
          if (!hi || bound < *hi) hi = bound;
        }
      }
      if (empty || (lo && hi && !(*lo < *hi))) continue;
      // Inside the disk: h = 1 + |a|^2 - 2 a.c > 2r, as q = h^2 - 4 r^2 > 0
      // with h > 0; q is a concave quadratic in tau.
      const Rational h0 = 1 + sq(a[0], a[1]) - 2 * (a[0] * mx + a[1] * my);
      const Rational h1 = -2 * (a[0] * dx + a[1] * dy);
      const Rational r0 = sq(mx - a[0], my - a[1]);
      const Rational r2 = sq(dx, dy);
      auto q = [&](const Rational& tau) {
        const Rational h = h0 + h1 * tau;
        return Rational(h * h - 4 * (r0 + r2 * tau * tau));
      };
      auto h = [&](const Rational& tau) { return Rational(h0 + h1 * tau); };
      // q'(tau) = 2 h1 h - 8 r2 tau = 0.
      Rational tau = (2 * h1 * h0) / (8 * r2 - 2 * h1 * h1);
      if (lo && tau < *lo) tau = *lo;
      if (hi && tau > *hi) tau = *hi;
      if (sgn(q(tau)) > 0 && sgn(h(tau)) > 0) out.insert({keep[i], keep[j]});
    }
  }

  // Polygons: circumcircles of triples with no site strictly inside.
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      for (std::size_t k = j + 1; k < keep.size(); ++k) {
        const auto& a = p[keep[i]];
        const auto& b = p[keep[j]];
        const auto& c = p[keep[k]];
        const Rational bx = b[0] - a[0], by = b[1] - a[1], cx = c[0] - a[0], cy = c[1] - a[1];
        const Rational det = 2 * (bx * cy - by * cx);
        if (sgn(det) == 0) continue;
        const Rational b2 = sq(bx, by), c2 = sq(cx, cy);
        const Rational ux = a[0] + (cy * b2 - by * c2) / det;
        const Rational uy = a[1] + (bx * c2 - cx * b2) / det;
        const Rational r2 = sq(a[0] - ux, a[1] - uy);
        std::vector<int> on;
        bool ok = true;
        for (int s : keep) {
          const int side = sgn(Rational(sq(p[s][0] - ux, p[s][1] - uy) - r2));
          if (side < 0) {
            ok = false;
            break;
          }
          if (side == 0) on.push_back(s);
        }
        if (!ok) continue;
        const Rational h = 1 - sq(ux, uy) + r2;
        if (sgn(h) > 0 && 4 * r2 < h * h) out.insert(on);
      }
  return CellSet(out.begin(), out.end());
}

CellSet cell_set(const Tessellation& t) {
  CellSet out;
  for (const auto& c : t.cells) out.push_back(c.vertices);
  std::sort(out.begin(), out.end());
  return out;
}

CellSet cell_set(const Tessellation& t, const std::vector<int>& ids) {
  CellSet out;
  for (int id : ids) out.push_back(t.cells.at(id).vertices);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HPoint> three_point_config(const Rational& a, const Rational& b) {
  Rational h(3, 2);
  return {HPoint::from_exact(QVec{1, 0, 0}), HPoint::from_exact(QVec{h, a, b}),
          HPoint::from_exact(QVec{h, a, Rational(-b)})};
}

std::vector<HPoint> three_point_config(const std::string& name) {
  if (name == "left") return three_point_config(Rational(1), Rational(1, 2));
  if (name == "middle") return three_point_config(Rational(1, 2), Rational(1));
  if (name == "right") return three_point_config(Rational(1, 5), Rational(11, 10));
  throw GeometryError("unknown three-point configuration '" + name + "'");
}

std::string instance_hash(const std::vector<HPoint>& sites) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& s : sites) {
    for (std::size_t i = 0; i < s.q().size(); ++i) {
      mix(to_string(s.q()[i]));
      mix(",");
    }
    mix(";");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OracleReport compare_cells(const std::string& oracle, const std::vector<HPoint>& sites, const CellSet& expected,
                           const CellSet& got) {
  OracleReport r;
  r.oracle = oracle;
  r.instance_hash = instance_hash(sites);
  CellSet e = expected, g = got;
  std::sort(e.begin(), e.end());
  std::sort(g.begin(), g.end());
  std::set_difference(e.begin(), e.end(), g.begin(), g.end(), std::back_inserter(r.missing));
  std::set_difference(g.begin(), g.end(), e.begin(), e.end(), std::back_inserter(r.extra));
  r.mismatches = static_cast<int>(r.missing.size() + r.extra.size());
  r.match = r.mismatches == 0;
  return r;
}

OracleReport voronoi_membership_oracle(const Tessellation& t, const VoronoiDiagram& v, int samples,
                                       std::uint64_t seed) {
  OracleReport r;
  r.oracle = "voronoi-membership";
  r.instance_hash = instance_hash(t.sites);
  const std::size_t d = t.sites.front().q().size();
  // Centroid, tangent frame and radius of the sampling ball.
  DVec sum(d);
  for (const auto& s : t.sites) sum += s.d();
  const DVec centre = (1.0 / std::sqrt(-minkowski(sum, sum))) * sum;
  double radius = 0;
  for (const auto& s : t.sites) radius = std::max(radius, std::acosh(std::max(1.0, -minkowski(centre, s.d()))));
  radius += 1.0;
  std::vector<DVec> frame;
  for (std::size_t i = 1; i < d; ++i) {
    DVec e(d);
    e[i] = 1;
    e += minkowski(e, centre) * centre;
    for (const auto& f : frame) e -= minkowski(e, f) * f;
    frame.push_back((1.0 / std::sqrt(minkowski(e, e))) * e);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double n = static_cast<double>(d - 1);
  auto check = [&](const QVec& x) {
    ++r.samples;
    const std::vector<int> nearest = nearest_sites(t, x);
    std::vector<int> cells;
    for (std::size_t s = 0; s < t.sites.size(); ++s) {
      const int id = v.site_cell[s];
      if (id >= 0 && v.cells[id].contains(x)) cells.push_back(static_cast<int>(s));
    }
    if (cells != nearest) {
      ++r.mismatches;
      if (r.missing.size() < 10) r.missing.push_back(nearest);
      if (r.extra.size() < 10) r.extra.push_back(cells);
    }
  };
  for (int i = 0; i < samples; ++i) {
    // Radius with density proportional to sinh^{n-1}, by rejection.
    double rad;
    while (true) {
      rad = radius * unit(rng);
      const double accept = std::pow(std::sinh(rad) / std::sinh(radius), n - 1);
      if (unit(rng) <= accept) break;
    }
    DVec dir(d);
    double norm = 0;
    std::vector<double> g(frame.size());
    for (auto& x : g) {
      x = gauss(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < frame.size(); ++k) dir += (g[k] / norm) * frame[k];
    const DVec x = std::cosh(rad) * centre + std::sinh(rad) * dir;
    check(exact_from_double(x));
  }
  // Points with ties: the witnesses of all faces, and the sites themselves.
  for (const auto& c : v.cells) {
    ++r.samples;
    const std::vector<int> nearest = nearest_sites(t, c.witness);
    if (nearest != c.sites) ++r.mismatches;
    for (std::size_t s = 0; s < t.sites.size(); ++s) {
      const int id = v.site_cell[s];
      if (id < 0) continue;
      const bool member = v.cells[id].contains(c.witness);
      const bool want = std::binary_search(c.sites.begin(), c.sites.end(), static_cast<int>(s));
      if (member != want) ++r.mismatches;
    }
  }
  for (const auto& s : t.sites) check(s.q());
  r.match = r.mismatches == 0;
  return r;
}

std::vector<HPoint> random_poincare_sites(std::mt19937_64& rng, int count) {
  std::vector<HPoint> out;
  std::set<std::vector<Rational>> seen;
  std::uniform_int_distribution<int> den(1, 64);
  while (static_cast<int>(out.size()) < count) {
    const int qx = den(rng), qy = den(rng);
    std::uniform_int_distribution<int> nx(-qx + 1, qx - 1), ny(-qy + 1, qy - 1);
    const Rational x(nx(rng), qx), y(ny(rng), qy);
    if (x * x + y * y >= 1) continue;
    std::vector<Rational> c{x, y};
    for (auto& v : c) v.canonicalize();
    if (!seen.insert(c).second) continue;
    out.push_back(lift(ModelPoint{Model::poincare_ball, c}));
  }
  return out;
}

std::vector<std::vector<HPoint>> random_corpus(std::uint64_t seed, int count, int min_sites, int max_sites) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(min_sites, max_sites);
  std::vector<std::vector<HPoint>> out;
  for (int i = 0; i < count; ++i) out.push_back(random_poincare_sites(rng, size(rng)));
  return out;
}

}  // namespace hypdel

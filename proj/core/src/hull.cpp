#include "hypdel/hull.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace hypdel {

namespace {

using Coords = std::vector<Rational>;

Rational dot_coords(const Coords& a, const Coords& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scales (eta, b) so that eta is a primitive integer vector; the positive
// factor keeps the inequality direction.
void normalize_plane(Coords& eta, Rational& b) {
  Coords scaled = primitive_direction(eta);
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (sgn(eta[i]) != 0) {
      b = b * scaled[i] / eta[i];
      break;
    }
  }
  b.canonicalize();
  eta = std::move(scaled);
}

struct SimplexFacet {
  std::vector<int> verts;  // sorted
  Coords eta;
  Rational b;
  bool alive = true;
  std::vector<int> outside;
};

// Randomized incremental hull of full-dimensional points in R^k, k >= 2.
// Returns the simplicial facets.
class Incremental {
public:
  Incremental(const std::vector<Coords>& x, std::uint64_t seed) : x_(x), k_(x.front().size()) {
    order_.resize(x.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = order_.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order_[i - 1], order_[j]);
    }
  }

  std::vector<SimplexFacet> run() {
    initial_simplex();
    for (int p : order_) {
      if (assigned_[p] < 0) continue;
      insert(p);
    }
    std::vector<SimplexFacet> out;
    for (auto& f : facets_)
      if (f.alive) out.push_back(f);
    return out;
  }

private:
  const std::vector<Coords>& x_;
  std::size_t k_;
  std::vector<int> order_;
  std::vector<SimplexFacet> facets_;
  std::map<std::vector<int>, std::vector<int>> ridges_;
  std::vector<int> assigned_;
  Coords interior_;

  bool sees(const SimplexFacet& f, int p) const { return dot_coords(f.eta, x_[p]) > f.b; }

  int make_facet(std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    Matrix<Rational> m(k_ - 1, k_);
    for (std::size_t r = 1; r < verts.size(); ++r)
      for (std::size_t c = 0; c < k_; ++c) m(r - 1, c) = x_[verts[r]][c] - x_[verts[0]][c];
    auto kernel = nullspace(m);
    if (kernel.size() != 1) throw GeometryError("internal: degenerate hull facet");
    SimplexFacet f;
    f.eta = primitive_direction(kernel.front());
    f.b = dot_coords(f.eta, x_[verts[0]]);
    if (dot_coords(f.eta, interior_) > f.b) {
      for (auto& v : f.eta) v = -v;
      f.b = -f.b;
    }
    f.verts = std::move(verts);
    facets_.push_back(std::move(f));
    const int id = static_cast<int>(facets_.size()) - 1;
    for (std::size_t drop = 0; drop < k_; ++drop) ridges_[ridge_key(facets_[id].verts, drop)].push_back(id);
    return id;
  }

  static std::vector<int> ridge_key(const std::vector<int>& verts, std::size_t drop) {
    std::vector<int> r;
    r.reserve(verts.size() - 1);
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (i != drop) r.push_back(verts[i]);
    return r;
  }

  void initial_simplex() {
    std::vector<int> chosen{order_.front()};
    for (std::size_t i = 1; i < order_.size() && chosen.size() < k_ + 1; ++i) {
      Matrix<Rational> m(chosen.size(), k_);
      const int cand = order_[i];
      for (std::size_t r = 1; r < chosen.size(); ++r)
        for (std::size_t c = 0; c < k_; ++c) m(r - 1, c) = x_[chosen[r]][c] - x_[chosen[0]][c];
      for (std::size_t c = 0; c < k_; ++c) m(chosen.size() - 1, c) = x_[cand][c] - x_[chosen[0]][c];
      if (rank(m) == chosen.size()) chosen.push_back(cand);
    }
    if (chosen.size() != k_ + 1) throw GeometryError("internal: points are not full-dimensional");
    interior_.assign(k_, Rational(0));
    for (int v : chosen)
      for (std::size_t c = 0; c < k_; ++c) interior_[c] += x_[v][c];
    for (auto& v : interior_) v /= static_cast<long>(k_ + 1);
    for (std::size_t drop = 0; drop <= k_; ++drop) make_facet(ridge_key(chosen, drop));
    assigned_.assign(x_.size(), -1);
    std::set<int> in_simplex(chosen.begin(), chosen.end());
    for (int p : order_) {
      if (in_simplex.count(p)) continue;
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        if (sees(facets_[f], p)) {
          assigned_[p] = static_cast<int>(f);
          facets_[f].outside.push_back(p);
          break;
        }
      }
    }
  }

  int across(int f, const std::vector<int>& ridge) const {
    const auto& owners = ridges_.at(ridge);
    for (int g : owners)
      if (g != f && facets_[g].alive) return g;
    throw GeometryError("internal: open hull ridge");
  }

  void insert(int p) {
    const int start = assigned_[p];
    std::vector<int> visible{start};
    std::set<int> seen{start};
    for (std::size_t i = 0; i < visible.size(); ++i) {
      const int f = visible[i];
      for (std::size_t drop = 0; drop < k_; ++drop) {
        int g = across(f, ridge_key(facets_[f].verts, drop));
        if (seen.count(g)) continue;
        if (sees(facets_[g], p)) {
          seen.insert(g);
          visible.push_back(g);
        }
      }
    }
    std::set<int> vis(visible.begin(), visible.end());
    std::vector<std::vector<int>> horizon;
    for (int f : visible) {
      for (std::size_t drop = 0; drop < k_; ++drop) {
        auto r = ridge_key(facets_[f].verts, drop);
        if (!vis.count(across(f, r))) horizon.push_back(std::move(r));
      }
    }
    std::vector<int> orphans;
    for (int f : visible) {
      facets_[f].alive = false;
      for (std::size_t drop = 0; drop < k_; ++drop) {
        auto& owners = ridges_[ridge_key(facets_[f].verts, drop)];
        owners.erase(std::remove(owners.begin(), owners.end(), f), owners.end());
      }
      for (int q : facets_[f].outside)
        if (q != p) orphans.push_back(q);
      facets_[f].outside.clear();
    }
    assigned_[p] = -1;
    std::vector<int> created;
    for (auto& r : horizon) {
      r.push_back(p);
      created.push_back(make_facet(std::move(r)));
    }
    std::sort(orphans.begin(), orphans.end(), [this](int a, int b) { return rank_of(a) < rank_of(b); });
    for (int q : orphans) {
      assigned_[q] = -1;
      for (int f : created) {
        if (sees(facets_[f], q)) {
          assigned_[q] = f;
          facets_[f].outside.push_back(q);
          break;
        }
      }
    }
  }

  std::size_t rank_of(int p) const {
    if (rank_cache_.empty()) {
      rank_cache_.resize(order_.size());
      for (std::size_t i = 0; i < order_.size(); ++i) rank_cache_[order_[i]] = i;
    }
    return rank_cache_[p];
  }
  mutable std::vector<std::size_t> rank_cache_;
};

struct AffineFrame {
  QVec base;
  std::vector<std::size_t> pivots;
  Matrix<Rational> rows;  // RREF basis of the direction space
  std::size_t dim = 0;
  bool origin_in_span = false;
};

AffineFrame affine_frame(const std::vector<QVec>& pts) {
  AffineFrame fr;
  fr.base = pts.front();
  const std::size_t d = fr.base.size();
  Matrix<Rational> m(pts.size() > 1 ? pts.size() - 1 : 1, d);
  for (std::size_t r = 1; r < pts.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = pts[r][c] - fr.base[c];
  auto ech = row_reduce(m);
  fr.dim = ech.rank();
  fr.pivots = ech.pivot_cols;
  fr.rows = Matrix<Rational>(fr.dim, d);
  for (std::size_t r = 0; r < fr.dim; ++r)
    for (std::size_t c = 0; c < d; ++c) fr.rows(r, c) = ech.reduced(r, c);
  // 0 is in the span iff -base is a combination of the rows, with the
  // coefficients read off at the pivots.
  fr.origin_in_span = true;
  for (std::size_t c = 0; c < d && fr.origin_in_span; ++c) {
    Rational v = 0;
    for (std::size_t r = 0; r < fr.dim; ++r) v += -fr.base[fr.pivots[r]] * fr.rows(r, c);
    if (v != -fr.base[c]) fr.origin_in_span = false;
  }
  return fr;
}

Coords frame_coords(const AffineFrame& fr, const QVec& p) {
  Coords a(fr.dim);
  for (std::size_t j = 0; j < fr.dim; ++j) a[j] = p[fr.pivots[j]] - fr.base[fr.pivots[j]];
  return a;
}

// Extends a functional eta . alpha <= b on frame coordinates to R^d.
void lift_functional(const AffineFrame& fr, const Coords& eta, const Rational& b, QVec& normal, Rational& offset) {
  normal = QVec(fr.base.size());
  offset = b;
  for (std::size_t j = 0; j < fr.dim; ++j) {
    normal[fr.pivots[j]] = eta[j];
    offset += eta[j] * fr.base[fr.pivots[j]];
  }
}

struct MergedFacet {
  Coords eta;
  Rational b;
  std::vector<int> verts;
};

std::vector<MergedFacet> merge_facets(const std::vector<SimplexFacet>& simplices, const std::vector<Coords>& x,
                                      double merge_eps) {
  const std::size_t n = simplices.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  std::vector<Coords> eta(n);
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = simplices[i].eta;
    b[i] = simplices[i].b;
    normalize_plane(eta[i], b[i]);
  }
  std::map<std::pair<Coords, Rational>, int> by_plane;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = by_plane.emplace(std::make_pair(eta[i], b[i]), static_cast<int>(i));
    if (!fresh) parent[find(static_cast<int>(i))] = find(it->second);
  }
  if (merge_eps > 0.0) {
    double scale = 0.0;
    for (const auto& p : x)
      for (const auto& v : p) scale = std::max(scale, std::abs(v.get_d()));
    std::vector<std::vector<double>> unit(n);
    std::vector<double> off(n);
    for (std::size_t i = 0; i < n; ++i) {
      double norm = 0.0;
      for (const auto& v : eta[i]) norm += v.get_d() * v.get_d();
      norm = std::sqrt(norm);
      for (const auto& v : eta[i]) unit[i].push_back(v.get_d() / norm);
      off[i] = b[i].get_d() / norm;
    }
    // Adjacent simplices share all but one vertex.
    std::map<std::vector<int>, std::vector<int>> ridge_owner;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = simplices[i].verts;
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<int> r;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (j != drop) r.push_back(v[j]);
        ridge_owner[r].push_back(static_cast<int>(i));
      }
    }
    for (const auto& [r, owners] : ridge_owner) {
      if (owners.size() != 2) continue;
      const int a = owners[0], c = owners[1];
      double diff = 0.0;
      for (std::size_t j = 0; j < unit[a].size(); ++j) diff += (unit[a][j] - unit[c][j]) * (unit[a][j] - unit[c][j]);
      if (std::sqrt(diff) < merge_eps && std::abs(off[a] - off[c]) < merge_eps * std::max(1.0, scale))
        parent[find(a)] = find(c);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<MergedFacet> out;
  for (const auto& [root, members] : groups) {
    MergedFacet m;
    m.eta = eta[members.front()];
    m.b = b[members.front()];
    std::set<int> verts;
    for (int s : members) verts.insert(simplices[s].verts.begin(), simplices[s].verts.end());
    for (std::size_t p = 0; p < x.size(); ++p)
      if (dot_coords(m.eta, x[p]) == m.b) verts.insert(static_cast<int>(p));
    m.verts.assign(verts.begin(), verts.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const MergedFacet& a, const MergedFacet& c) { return a.verts < c.verts; });
  return out;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Face lattice of a polytope given by its facets' vertex sets.
void build_lattice(Hull& hull, int facet_dim, bool with_top_face) {
  const int nf = static_cast<int>(hull.facets.size());
  std::map<std::vector<int>, int> index;
  std::vector<HullFace> faces;
  std::vector<std::vector<int>> incident(hull.points.size());
  for (int f = 0; f < nf; ++f)
    if (!hull.facets[f].top)
      for (int v : hull.facets[f].vertices) incident[v].push_back(f);

  auto add_face = [&](std::vector<int> verts, int dim) {
    auto it = index.find(verts);
    if (it != index.end()) return it->second;
    HullFace face;
    face.dim = dim;
    face.vertices = std::move(verts);
    faces.push_back(face);
    const int id = static_cast<int>(faces.size()) - 1;
    index[faces[id].vertices] = id;
    return id;
  };

  std::vector<int> queue;
  if (with_top_face) {
    std::vector<int> all(hull.points.size());
    std::iota(all.begin(), all.end(), 0);
    queue.push_back(add_face(all, facet_dim + 1));
  }
  for (int f = 0; f < nf; ++f) {
    if (hull.facets[f].top) continue;
    const int id = add_face(hull.facets[f].vertices, facet_dim);
    if (with_top_face) {
      faces[id].parents.push_back(0);
      faces[0].children.push_back(id);
    } else {
      queue.push_back(id);
    }
  }
  if (with_top_face) queue = faces[0].children;

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int fid = queue[qi];
    if (faces[fid].dim == 0) continue;
    const std::vector<int> verts = faces[fid].vertices;
    std::set<int> candidates;
    for (int v : verts) candidates.insert(incident[v].begin(), incident[v].end());
    std::vector<std::vector<int>> cuts;
    for (int g : candidates) {
      const auto& gv = hull.facets[g].vertices;
      if (is_subset(verts, gv)) continue;
      std::vector<int> cut;
      std::set_intersection(verts.begin(), verts.end(), gv.begin(), gv.end(), std::back_inserter(cut));
      if (!cut.empty()) cuts.push_back(std::move(cut));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      bool maximal = true;
      for (std::size_t j = 0; j < cuts.size() && maximal; ++j)
        if (i != j && cuts[j].size() > cuts[i].size() && is_subset(cuts[i], cuts[j])) maximal = false;
      if (!maximal) continue;
      const bool fresh = index.find(cuts[i]) == index.end();
      const int child = add_face(cuts[i], faces[fid].dim - 1);
      faces[fid].children.push_back(child);
      faces[child].parents.push_back(fid);
      if (fresh) queue.push_back(child);
    }
  }

  for (auto& face : faces) {
    if (face.vertices.size() == hull.points.size() && with_top_face && face.dim == facet_dim + 1) {
      for (int f = 0; f < nf; ++f) face.facets.push_back(f);
      continue;
    }
    std::set<int> cand(incident[face.vertices.front()].begin(), incident[face.vertices.front()].end());
    for (int f : cand)
      if (is_subset(face.vertices, hull.facets[f].vertices)) face.facets.push_back(f);
    for (int f = 0; f < nf; ++f)
      if (hull.facets[f].top) face.facets.push_back(f);
    std::sort(face.facets.begin(), face.facets.end());
  }

  // Canonical order and ids.
  std::vector<int> perm(faces.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (faces[a].dim != faces[b].dim) return faces[a].dim < faces[b].dim;
    return faces[a].vertices < faces[b].vertices;
  });
  std::vector<int> new_id(faces.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_id[perm[i]] = static_cast<int>(i);
  hull.faces.clear();
  for (std::size_t i = 0; i < perm.size(); ++i) {
    HullFace f = faces[perm[i]];
    f.id = static_cast<int>(i);
    for (auto& c : f.children) c = new_id[c];
    for (auto& p : f.parents) p = new_id[p];
    std::sort(f.children.begin(), f.children.end());
    std::sort(f.parents.begin(), f.parents.end());
    f.visible = std::any_of(f.facets.begin(), f.facets.end(), [&](int g) { return hull.facets[g].visible(); });
    hull.faces.push_back(std::move(f));
  }

  // Facet adjacency through shared ridges.
  for (const auto& face : hull.faces) {
    if (face.dim != facet_dim - 1) continue;
    std::vector<int> owners;
    for (int f : face.facets)
      if (!hull.facets[f].top) owners.push_back(f);
    for (int a : owners)
      for (int b : owners)
        if (a != b) hull.facets[a].neighbors.push_back(b);
  }
  for (auto& f : hull.facets) {
    std::sort(f.neighbors.begin(), f.neighbors.end());
    f.neighbors.erase(std::unique(f.neighbors.begin(), f.neighbors.end()), f.neighbors.end());
  }
}

}  // namespace

Hull build_hull(const std::vector<QVec>& input, const HullOptions& opts) {
  if (input.empty()) throw GeometryError("hull of an empty point set");
  Hull hull;
  hull.ambient_dim = input.front().size();
  std::map<QVec, int> seen;
  std::vector<int> unique_input;
  hull.representative.resize(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i].size() != hull.ambient_dim) throw GeometryError("points differ in dimension");
    auto [it, fresh] = seen.emplace(input[i], static_cast<int>(unique_input.size()));
    if (fresh) {
      unique_input.push_back(static_cast<int>(i));
    } else {
      hull.warnings.push_back("duplicate point " + std::to_string(i) + " dropped (same as point " +
                              std::to_string(unique_input[it->second]) + ")");
    }
    hull.representative[i] = unique_input[it->second];
  }
  // Point indices inside the hull refer to the original input positions.
  for (int i : unique_input) hull.points.push_back(input[i]);

  const AffineFrame fr = affine_frame(hull.points);
  hull.affine_dim = fr.dim;
  hull.origin_in_span = fr.origin_in_span;
  std::vector<Coords> x;
  for (const auto& p : hull.points) x.push_back(frame_coords(fr, p));

  std::vector<MergedFacet> merged;
  if (fr.dim == 1) {
    int lo = 0, hi = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      if (x[i][0] < x[lo][0]) lo = static_cast<int>(i);
      if (x[i][0] > x[hi][0]) hi = static_cast<int>(i);
    }
    merged.push_back({Coords{Rational(-1)}, Rational(-x[lo][0]), {lo}});
    merged.push_back({Coords{Rational(1)}, x[hi][0], {hi}});
    std::sort(merged.begin(), merged.end(), [](const MergedFacet& a, const MergedFacet& c) { return a.verts < c.verts; });
  } else if (fr.dim >= 2) {
    Incremental inc(x, opts.seed);
    merged = merge_facets(inc.run(), x, opts.merge_eps);
  }
  for (auto& m : merged) {
    HullFacet f;
    for (int v : m.verts) f.vertices.push_back(v);
    lift_functional(fr, m.eta, m.b, f.normal, f.offset);
    hull.facets.push_back(std::move(f));
  }
  const bool lower = fr.dim < hull.ambient_dim;
  if (lower && !fr.origin_in_span) {
    // The plane through the whole point set closest to the origin.
    const std::size_t d = hull.ambient_dim;
    Matrix<Rational> gram(fr.dim, fr.dim);
    std::vector<Rational> rhs(fr.dim);
    for (std::size_t i = 0; i < fr.dim; ++i) {
      for (std::size_t j = 0; j < fr.dim; ++j)
        for (std::size_t c = 0; c < d; ++c) gram(i, j) += fr.rows(i, c) * fr.rows(j, c);
      for (std::size_t c = 0; c < d; ++c) rhs[i] += fr.rows(i, c) * fr.base[c];
    }
    QVec m = fr.base;
    if (fr.dim > 0) {
      auto y = solve(gram, rhs);
      for (std::size_t i = 0; i < fr.dim; ++i)
        for (std::size_t c = 0; c < d; ++c) m[c] -= (*y)[i] * fr.rows(i, c);
    }
    HullFacet top;
    top.top = true;
    top.normal = -m;
    top.offset = -dot(m, m);
    top.vertices.resize(hull.points.size());
    std::iota(top.vertices.begin(), top.vertices.end(), 0);
    hull.facets.push_back(std::move(top));
  }
  if (fr.dim == 0) {
    HullFace f;
    f.id = 0;
    f.dim = 0;
    f.vertices = {0};
    for (std::size_t i = 0; i < hull.facets.size(); ++i) f.facets.push_back(static_cast<int>(i));
    f.visible = !hull.facets.empty();
    hull.faces.push_back(f);
  } else {
    build_lattice(hull, static_cast<int>(fr.dim) - 1, lower && !fr.origin_in_span);
  }
  // Report vertex ids as original input indices.
  auto remap = [&](std::vector<int>& v) {
    for (auto& i : v) i = unique_input[i];
  };
  for (auto& f : hull.facets) remap(f.vertices);
  for (auto& f : hull.faces) remap(f.vertices);
  {
    std::vector<QVec> by_input(input.size());
    for (std::size_t i = 0; i < unique_input.size(); ++i) by_input[unique_input[i]] = hull.points[i];
    hull.points = std::move(by_input);
  }
  return hull;
}

std::vector<int> visible_faces(const Hull& hull) {
  std::vector<int> out;
  for (const auto& f : hull.faces)
    if (f.visible) out.push_back(f.id);
  if (out.empty()) throw GeometryError("the origin lies in the hull; no visible faces");
  return out;
}

QPlane face_support_plane(const Hull& hull, int face_id) {
  const HullFace& face = hull.faces.at(face_id);
  if (!face.visible) throw GeometryError("face is not visible");
  std::vector<int> strong, weak;
  for (int f : face.facets) {
    const auto& v = hull.facets[f].vertices;
    if (!std::includes(v.begin(), v.end(), face.vertices.begin(), face.vertices.end())) continue;
    (sgn(hull.facets[f].offset) <= 0 ? strong : weak).push_back(f);
  }
  if (strong.empty()) throw GeometryError("face is not visible");
  // Planes with offset <= 0 alone suffice when they already cut out the face.
  std::vector<int> common = hull.facets[strong.front()].vertices;
  for (int f : strong) {
    std::vector<int> next;
    const auto& v = hull.facets[f].vertices;
    std::set_intersection(common.begin(), common.end(), v.begin(), v.end(), std::back_inserter(next));
    common = std::move(next);
  }
  const bool exact_cut = common == face.vertices;
  Rational c_neg = 0, c_pos = 0;
  for (int f : strong) c_neg += hull.facets[f].offset;
  if (!exact_cut)
    for (int f : weak) c_pos += hull.facets[f].offset;
  Rational eps = 1;
  if (sgn(c_pos) > 0) eps = std::min(Rational(1), Rational(-c_neg / (2 * c_pos)));
  QVec eta(hull.ambient_dim);
  Rational b = 0;
  for (int f : strong) {
    eta += hull.facets[f].normal;
    b += hull.facets[f].offset;
  }
  if (!exact_cut) {
    for (int f : weak) {
      eta += eps * hull.facets[f].normal;
      b += eps * hull.facets[f].offset;
    }
  }
  // eta . x <= b  is  bar(eta) o x >= -b.
  QVec u = bar(eta);
  Rational c = -b;
  Coords uc = u.coords();
  Rational scaled = c;
  normalize_plane(uc, scaled);
  auto first = std::find_if(uc.begin(), uc.end(), [](const Rational& v) { return sgn(v) != 0; });
  if (first != uc.end() && sgn(*first) < 0) {
    for (auto& v : uc) v = -v;
    scaled = -scaled;
  }
  return QPlane{QVec(std::move(uc)), scaled};
}

std::vector<std::vector<int>> brute_force_facets(const std::vector<QVec>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  const std::size_t d = points.front().size();
  std::set<std::vector<int>> found;
  std::vector<int> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      Matrix<Rational> m(d - 1, d);
      for (std::size_t r = 1; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = points[pick[r]][c] - points[pick[0]][c];
      auto kernel = nullspace(m);
      if (kernel.size() != 1) return;
      QVec eta(kernel.front());
      Rational b = dot(eta, points[pick[0]]);
      int pos = 0, neg = 0;
      std::vector<int> on;
      for (std::size_t p = 0; p < n; ++p) {
        int s = sgn(Rational(dot(eta, points[p]) - b));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
        if (s == 0) on.push_back(static_cast<int>(p));
      }
      if (pos == 0 || neg == 0) found.insert(on);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = static_cast<int>(i);
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return {found.begin(), found.end()};
}

}  // namespace hypdel

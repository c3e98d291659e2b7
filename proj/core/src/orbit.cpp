#include "hypdel/orbit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

namespace hypdel {

namespace {

Matrix<Rational> multiply(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  Matrix<Rational> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

std::vector<Rational> flatten(const Matrix<Rational>& m) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

std::string invert_word(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (auto& ch : out)
    ch = std::islower(static_cast<unsigned char>(ch)) ? static_cast<char>(std::toupper(ch))
                                                        : static_cast<char>(std::tolower(ch));
  return out;
}

}  // namespace

QVec GroupElement::apply(const QVec& x) const {
  QVec out(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) s += matrix(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

DVec GroupElement::apply(const DVec& x) const {
  DVec out(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) s += matrix(i, j).get_d() * x[j];
    out[i] = s;
  }
  return out;
}

GroupElement GroupElement::inverse() const {
  // J M^T J.
  GroupElement g;
  const std::size_t n = matrix.rows();
  g.matrix = Matrix<Rational>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int s = ((i == 0) != (j == 0)) ? -1 : 1;
      g.matrix(i, j) = s * matrix(j, i);
    }
  g.word = invert_word(word);
  if (has_sl2) {
    g.has_sl2 = true;
    g.sl2 = SL2{sl2.d, -sl2.b, -sl2.c, sl2.a};
  }
  return g;
}

bool GroupElement::preserves_form() const {
  const std::size_t n = matrix.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += (k == 0 ? -1 : 1) * matrix(k, i) * matrix(k, j);
      const Rational want = i == j ? Rational(i == 0 ? -1 : 1) : Rational(0);
      if (s != want) return false;
    }
  return true;
}

bool GroupElement::orthochronous() const { return sgn(matrix(0, 0)) > 0; }

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  GroupElement out;
  out.matrix = multiply(g.matrix, h.matrix);
  out.word = g.word + h.word;
  if (g.has_sl2 && h.has_sl2) {
    out.has_sl2 = true;
    out.sl2 = SL2{g.sl2.a * h.sl2.a + g.sl2.b * h.sl2.c, g.sl2.a * h.sl2.b + g.sl2.b * h.sl2.d,
                  g.sl2.c * h.sl2.a + g.sl2.d * h.sl2.c, g.sl2.c * h.sl2.b + g.sl2.d * h.sl2.d};
  }
  return out;
}

bool operator==(const GroupElement& g, const GroupElement& h) { return flatten(g.matrix) == flatten(h.matrix); }

GroupElement identity_element(std::size_t ambient) {
  GroupElement g;
  g.matrix = Matrix<Rational>(ambient, ambient);
  for (std::size_t i = 0; i < ambient; ++i) g.matrix(i, i) = 1;
  if (ambient == 3) g.has_sl2 = true;
  return g;
}

GroupElement sl2_to_so21(const SL2& m, const std::string& word) {
  if (m.a * m.d - m.b * m.c != 1) throw GeometryError("SL(2) generator must have determinant 1");
  GroupElement g;
  g.matrix = Matrix<Rational>(3, 3);
  g.word = word;
  g.has_sl2 = true;
  g.sl2 = m;
  // Images of e0, e1, e2 under X -> m X m^T.
  const Rational basis[3][3] = {{1, 0, 1}, {1, 0, -1}, {0, 1, 0}};  // X entries (x00, x01, x11)
  for (int col = 0; col < 3; ++col) {
    const Rational& p = basis[col][0];
    const Rational& q = basis[col][1];
    const Rational& r = basis[col][2];
    // m X m^T with X = [[p, q], [q, r]].
    const Rational y00 = m.a * (m.a * p + m.b * q) + m.b * (m.a * q + m.b * r);
    const Rational y01 = m.a * (m.c * p + m.d * q) + m.b * (m.c * q + m.d * r);
    const Rational y11 = m.c * (m.c * p + m.d * q) + m.d * (m.c * q + m.d * r);
    g.matrix(0, col) = (y00 + y11) / 2;
    g.matrix(1, col) = (y00 - y11) / 2;
    g.matrix(2, col) = y01;
  }
  return g;
}

std::vector<GroupElement> label_generators(std::vector<GroupElement> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) gens[i].word = std::string(1, static_cast<char>('a' + i));
  return gens;
}

int OrbitSet::index_of(const QVec& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? -1 : it->second;
}

OrbitSet orbit_ball(const std::vector<GroupElement>& gens, const std::vector<HPoint>& bases, int L) {
  if (L < 0) throw GeometryError("word length must be nonnegative");
  if (bases.empty()) throw GeometryError("orbit of an empty base set");
  const std::size_t ambient = bases.front().q().size();
  std::vector<GroupElement> letters;
  for (const auto& g : gens) {
    if (g.matrix.rows() != ambient || g.matrix.cols() != ambient) throw GeometryError("generator of the wrong size");
    if (!g.preserves_form() || !g.orthochronous()) throw GeometryError("generator is not in SO+(1,n)");
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  OrbitSet o;
  o.bases = bases;
  o.max_length = L;
  std::set<std::vector<Rational>> seen;
  struct Node {
    GroupElement g;
    int last;  // letter index, -1 for the identity
  };
  std::vector<Node> layer{{identity_element(ambient), -1}};
  seen.insert(flatten(layer.front().g.matrix));
  o.elements.push_back(layer.front().g);
  for (int len = 1; len <= L; ++len) {
    std::vector<Node> next;
    for (const auto& node : layer) {
      for (std::size_t li = 0; li < letters.size(); ++li) {
        if (node.last >= 0 && (li ^ 1U) == static_cast<std::size_t>(node.last)) continue;
        GroupElement h = node.g * letters[li];
        if (!seen.insert(flatten(h.matrix)).second) continue;
        o.elements.push_back(h);
        next.push_back(Node{std::move(h), static_cast<int>(li)});
      }
    }
    layer = std::move(next);
  }
  for (const auto& g : o.elements) {
    for (std::size_t b = 0; b < bases.size(); ++b) {
      HPoint p = bases[b].exact() ? HPoint::from_exact(g.apply(bases[b].q())) : HPoint::from_float(g.apply(bases[b].d()));
      if (o.index_.count(p.q())) continue;
      o.index_[p.q()] = static_cast<int>(o.points.size());
      o.points.push_back(std::move(p));
      o.provenance.push_back(OrbitPoint{static_cast<int>(b), g.word, static_cast<int>(g.word.size())});
    }
  }
  return o;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

InvarianceReport invariance_report(const Tessellation& t, const OrbitSet& orbit, const std::vector<GroupElement>& gens,
                                   int margin) {
  InvarianceReport rep;
  rep.max_length = orbit.max_length;
  rep.margin = margin;
  rep.orbit_counts.assign(static_cast<std::size_t>(t.n) + 1, 0);
  if (t.sites.size() != orbit.points.size()) throw GeometryError("tessellation was not built from this orbit");
  auto interior_vertex = [&](int v) { return orbit.provenance[v].length <= orbit.max_length - margin; };
  std::vector<bool> interior(t.cells.size(), false);
  int interior_vertices = 0;
  for (const auto& c : t.cells) {
    interior[c.id] = std::all_of(c.vertices.begin(), c.vertices.end(), interior_vertex);
    if (interior[c.id]) {
      rep.interior_cells.push_back(c.id);
      if (c.dim == 0) ++interior_vertices;
      if (c.support.parallel_type() == CausalType::time_like) ++rep.time_like_faces;
    }
  }
  if (interior_vertices < 2) rep.degenerate = true;

  std::map<std::vector<int>, int> by_verts;
  for (const auto& c : t.cells) by_verts[c.vertices] = c.id;
  std::vector<GroupElement> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  UnionFind uf(t.cells.size());
  for (int id : rep.interior_cells) {
    const auto& c = t.cells[id];
    for (const auto& g : letters) {
      std::vector<int> image;
      bool inside = true;
      for (int v : c.vertices) {
        const int w = orbit.index_of(g.apply(t.sites[v].q()));
        if (w < 0 || !interior_vertex(w)) {
          inside = false;
          break;
        }
        image.push_back(w);
      }
      if (!inside) continue;
      std::sort(image.begin(), image.end());
      ++rep.action_checks;
      auto it = by_verts.find(image);
      if (it == by_verts.end()) {
        ++rep.action_failures;
        if (rep.failures.size() < 20)
          rep.failures.push_back("image of cell " + std::to_string(id) + " under " + g.word + " is not a cell");
        continue;
      }
      uf.unite(id, it->second);
    }
  }
  std::set<int> roots;
  for (int id : rep.interior_cells) {
    if (roots.insert(uf.find(id)).second) ++rep.orbit_counts[t.cells[id].dim];
  }
  return rep;
}

bool counts_stabilized(const InvarianceReport& a, const InvarianceReport& b) {
  return !a.degenerate && !b.degenerate && a.orbit_counts == b.orbit_counts;
}

CuspDiagnostic cusp_cell_diagnostic(const Tessellation& t, const QVec& cusp) {
  CuspDiagnostic d;
  const DVec cd = to_double(cusp);
  const double cn = std::sqrt(dot(cd, cd));
  double best = HUGE_VAL;
  for (const auto& c : t.cells) {
    if (!c.top || c.dim != t.n || sgn(c.support.c) == 0) continue;
    CuspCell cc;
    cc.cell = c.id;
    // {x o u = c} is {x o (-u / c) = -1}.
    const QVec u = (Rational(-1) / c.support.c) * c.support.u;
    cc.norm = minkowski(u, u);
    cc.u = to_double(u);
    const double un = std::sqrt(dot(cc.u, cc.u));
    const DVec a = (1.0 / un) * cc.u, b = (1.0 / cn) * cd;
    const DVec diff = a - b, sum = a + b;
    cc.angle = std::min(std::sqrt(dot(diff, diff)), std::sqrt(dot(sum, sum)));
    if (cc.angle < best) {
      best = cc.angle;
      d.closest = static_cast<int>(d.cells.size());
    }
    d.cells.push_back(std::move(cc));
  }
  if (d.closest >= 0) {
    const DVec& u = d.cells[d.closest].u;
    d.direction = (1.0 / u[0]) * u;
  }
  return d;
}

TrendVerdict trend(const std::vector<double>& values) {
  TrendVerdict v;
  v.values = values;
  v.strictly_decreasing = v.non_increasing = v.strictly_increasing = values.size() >= 2;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) v.strictly_decreasing = false;
    if (!(values[i] <= values[i - 1])) v.non_increasing = false;
    if (!(values[i] > values[i - 1])) v.strictly_increasing = false;
  }
  return v;
}

std::vector<HPoint> bad_example_points(double r_inf, int n) {
  if (!(r_inf > 1)) throw GeometryError("r_inf must exceed 1");
  if (n < 0) throw GeometryError("point count must be nonnegative");
  auto lift_half = [](double x, double y) {
    const double r2 = x * x + y * y;
    return HPoint::from_float(DVec{(r2 + 1) / (2 * y), (r2 - 1) / (2 * y), x / y});
  };
  std::vector<HPoint> out{lift_half(0.0, 1.0)};
  for (int k = 1; k <= n; ++k) {
    const double r = r_inf + 1.0 / k;
    const double y = 1.0 / (k + 1);
    // Circle of radius r centred at (1 - r) i.
    const double h = y - 1 + r;
    const double x = std::sqrt(r * r - h * h);
    out.push_back(lift_half(x, y));
    out.push_back(lift_half(-x, y));
  }
  return out;
}

int bad_example_index(int k) {
  if (k == 0) return 0;
  return k > 0 ? 2 * k - 1 : -2 * k;
}

std::vector<GroupElement> punctured_torus_generators() {
  return label_generators({sl2_to_so21(SL2{1, 1, 1, 2}), sl2_to_so21(SL2{1, -1, -1, 2})});
}

}  // namespace hypdel

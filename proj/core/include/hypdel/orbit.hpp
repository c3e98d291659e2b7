#pragma once

// Truncated orbits of subgroups of SO+(1,2) and the invariance and cusp
// diagnostics run on their Delaunay tessellations.

#include "hypdel/delaunay.hpp"

#include <map>
#include <string>
#include <vector>

namespace hypdel {

/// [[a, b], [c, d]] with ad - bc = 1.
struct SL2 {
  Rational a = 1, b = 0, c = 0, d = 1;
};

struct GroupElement {
  /// Acts on column vectors; preserves the Lorentz form.
  Matrix<Rational> matrix;
  /// Letters 'a', 'b', ... for generators and 'A', 'B', ... for inverses.
  std::string word;
  bool has_sl2 = false;
  SL2 sl2;

  QVec apply(const QVec& x) const;
  DVec apply(const DVec& x) const;
  GroupElement inverse() const;
  /// M^T J M == J, exactly.
  bool preserves_form() const;
  /// First entry of the first column is positive.
  bool orthochronous() const;

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  friend bool operator==(const GroupElement& g, const GroupElement& h);
};

GroupElement identity_element(std::size_t ambient = 3);

/// The action X -> m X m^T on X = [[x0 + x1, x2], [x2, x0 - x1]]. Throws
/// GeometryError unless det m = 1.
GroupElement sl2_to_so21(const SL2& m, const std::string& word = "");

/// Numbers the generators: generator i gets the letter 'a' + i.
std::vector<GroupElement> label_generators(std::vector<GroupElement> gens);

struct OrbitPoint {
  int base = 0;
  std::string word;
  int length = 0;
};

struct OrbitSet {
  std::vector<HPoint> bases;
  /// The ball of reduced words of length <= max_length, one per distinct
  /// matrix, shortest first.
  std::vector<GroupElement> elements;
  std::vector<HPoint> points;
  std::vector<OrbitPoint> provenance;
  int max_length = 0;

  /// Index of the point, or -1.
  int index_of(const QVec& x) const;

private:
  friend OrbitSet orbit_ball(const std::vector<GroupElement>&, const std::vector<HPoint>&, int);
  std::map<QVec, int> index_;
};

/// Throws GeometryError for L < 0 or a generator not preserving the form.
OrbitSet orbit_ball(const std::vector<GroupElement>& gens, const std::vector<HPoint>& bases, int L);

struct InvarianceReport {
  int max_length = 0;
  int margin = 1;
  /// Cells all of whose vertices have word length <= max_length - margin.
  std::vector<int> interior_cells;
  /// Orbit classes of interior cells under the generators, by dimension.
  std::vector<int> orbit_counts;
  /// Images of interior cells under generators and inverses that land on
  /// interior vertices, and how many of those are not cells.
  int action_checks = 0;
  int action_failures = 0;
  std::vector<std::string> failures;
  /// Interior cells whose support plane is parallel to a time-like subspace.
  int time_like_faces = 0;
  /// Fewer than two interior vertices: nothing to compare.
  bool degenerate = false;
};

/// margin = 1 drops exactly the cells touching the truncation frontier
/// (a vertex of maximal word length).
InvarianceReport invariance_report(const Tessellation& t, const OrbitSet& orbit, const std::vector<GroupElement>& gens,
                                   int margin = 1);

/// Whether two runs (typically at L - 1 and L) found the same orbit counts.
bool counts_stabilized(const InvarianceReport& a, const InvarianceReport& b);

struct CuspCell {
  int cell = -1;
  /// u o u for the support plane scaled to {x o u = -1}.
  Rational norm;
  DVec u;
  /// Euclidean distance between the unit normal and the unit cusp direction
  /// (up to sign).
  double angle = 0.0;
};

struct CuspDiagnostic {
  std::vector<CuspCell> cells;
  /// Position in `cells` of the top cell projectively closest to the cusp.
  int closest = -1;
  /// Its normal scaled to first coordinate 1, the light-like direction the
  /// cusp cells approach.
  DVec direction;
};

/// Lorentz norms of the top cells' support normals and the cell closest to
/// the light-like direction `cusp`.
CuspDiagnostic cusp_cell_diagnostic(const Tessellation& t, const QVec& cusp);

struct TrendVerdict {
  std::vector<double> values;
  bool strictly_decreasing = false;
  bool non_increasing = false;
  bool strictly_increasing = false;
};

TrendVerdict trend(const std::vector<double>& values);

/// Points p_0 = i and p_{+-n}, n = 1..N, of the upper half-plane on the
/// circle of radius r_inf + 1/n through i centred on the imaginary axis,
/// at height 1/(n+1), lifted to the hyperboloid (float mode). Ordered
/// p_0, p_1, p_{-1}, p_2, p_{-2}, ...
std::vector<HPoint> bad_example_points(double r_inf, int n);

/// Position of p_k in the list above.
int bad_example_index(int k);

/// The generators of the punctured-torus fixture, [[1,1],[1,2]] and
/// [[1,-1],[-1,2]], as labelled elements.
std::vector<GroupElement> punctured_torus_generators();

}  // namespace hypdel

#pragma once

// Voronoi tessellation of a finite site set and the geometric-dual
// subcomplex of its Delaunay tessellation.
//
// A Voronoi face is stored implicitly: the bisector planes through 0 that
// cut out its span and the half-spaces bounding it inside that span.
// Unbounded faces are never clipped.

#include "hypdel/delaunay.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypdel {

/// {x : x o (s0 - s1) = 0}, the points of H^n equidistant from s0 and s1.
/// Throws GeometryError for equal sites.
QPlane bisector(const HPoint& s0, const HPoint& s1);

struct VoronoiCell {
  int id = -1;
  int dim = 0;
  /// The maximal site set whose Voronoi cells meet exactly in this face.
  std::vector<int> sites;
  /// x o (s - s0) = 0 for s in sites, s0 = sites.front().
  std::vector<QPlane> equalities;
  /// x o (s0 - t) >= 0 for nearby sites t outside `sites`.
  std::vector<HalfSpace<Rational>> halfspaces;
  /// Float copies of the normals above, for filtering.
  std::vector<DVec> dequalities;
  std::vector<DVec> dhalfspaces;
  /// A future time-like vector whose ray meets the relative interior.
  QVec witness;
  /// The witness on the hyperboloid (float).
  DVec point;
  int dual_cell = -1;
  /// Faces of dimension dim - 1, and faces of dimension dim + 1 containing this.
  std::vector<int> faces;
  std::vector<int> cofaces;

  /// Closed membership of the ray through x (x future time-like).
  bool contains(const QVec& x) const;
  /// Membership in the relative interior.
  bool contains_interior(const QVec& x) const;
};

struct DualPair {
  int voronoi_id = -1;
  int delaunay_cell_id = -1;
};

struct VoronoiDiagram {
  int n = 0;
  std::vector<VoronoiCell> cells;
  std::vector<DualPair> pairs;
  /// Id of the n-cell of every site; -1 for duplicate sites.
  std::vector<int> site_cell;

  /// Face with exactly this site set, or -1.
  int find(const std::vector<int>& sites) const;
};

VoronoiDiagram voronoi_diagram(const Tessellation& t);
/// Throws GeometryError for an empty site list.
VoronoiDiagram voronoi_diagram(const std::vector<HPoint>& sites, const DelaunayOptions& opts = {});

struct GeometricDual {
  /// Delaunay cell ids, ascending.
  std::vector<int> cells;
  std::vector<DualPair> pairs;
};

GeometricDual geometric_dual(const Tessellation& t, const VoronoiDiagram& v);
GeometricDual geometric_dual(const Tessellation& t);

/// Whether the Delaunay cell is the geometric dual of a Voronoi face, with a
/// witness of the face in that case.
bool is_geometric_dual(const Tessellation& t, int cell_id, QVec* witness = nullptr);

struct ContravarianceReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// For every inclusion of Voronoi faces V' in V the dual of V is a face of
/// the dual of V'; every face of a dual cell is dual to a face containing V;
/// dimensions of dual pairs sum to n.
ContravarianceReport check_contravariance(const Tessellation& t, const VoronoiDiagram& v);

/// Sites whose Lorentz pairing with x is maximal, i.e. the nearest sites to
/// the ray through x. Duplicate sites are skipped. Filtered exact.
std::vector<int> nearest_sites(const Tessellation& t, const QVec& x);

/// Sign of x o n, exact, with a floating-point filter; xd and nd are the
/// rounded copies of x and n.
int lorentz_sign(const QVec& x, const DVec& xd, const QVec& n, const DVec& nd);

}  // namespace hypdel

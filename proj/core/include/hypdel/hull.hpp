#pragma once

// Exact convex hull in R^d with polytopal (merged) facets and the full face
// lattice. Inputs of lower affine rank are hulled inside their affine span.

#include "hypdel/lorentz.hpp"
#include "hypdel/models.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypdel {

struct HullOptions {
  std::uint64_t seed = 0;
  /// Float mode only: adjacent facets whose unit normals differ by less than
  /// eps (and offsets by less than eps * scale) are merged.
  double merge_eps = 0.0;
};

/// A facet of the hull as a polytope in its affine span; normal . x <= offset
/// holds for every input point. For lower-dimensional hulls the functional
/// is one extension of the facet functional to all of R^d.
struct HullFacet {
  std::vector<int> vertices;
  QVec normal;
  Rational offset;
  std::vector<int> neighbors;
  /// The top plane of a hull that misses 0 (every point lies on it).
  bool top = false;
  bool visible() const { return sgn(offset) < 0; }
};

struct HullFace {
  int id = -1;
  int dim = 0;
  std::vector<int> vertices;
  std::vector<int> facets;
  std::vector<int> parents;
  std::vector<int> children;
  bool visible = false;
};

struct Hull {
  std::size_t ambient_dim = 0;
  /// Dimension of the affine span of the input.
  std::size_t affine_dim = 0;
  bool origin_in_span = false;
  /// Representative index for every input point (duplicates map to the
  /// first copy).
  std::vector<int> representative;
  std::vector<QVec> points;
  std::vector<HullFacet> facets;
  /// All proper faces of the polytope (and the polytope itself when it is
  /// lower-dimensional), sorted by (dim, vertices).
  std::vector<HullFace> faces;
  std::vector<std::string> warnings;
};

/// Throws GeometryError for empty input.
Hull build_hull(const std::vector<QVec>& points, const HullOptions& opts = {});

/// Ids of the faces with a support plane strictly separating 0 from the
/// points. Throws if 0 lies in the hull.
std::vector<int> visible_faces(const Hull& hull);

/// A plane {x o u = c} touching the hull exactly in the face with every
/// other point on the side away from 0. Throws for non-visible faces.
QPlane face_support_plane(const Hull& hull, int face_id);

/// Naive hull for cross-checking: facets as sorted vertex lists found by
/// enumerating d-subsets. Full-dimensional input only.
std::vector<std::vector<int>> brute_force_facets(const std::vector<QVec>& points);

}  // namespace hypdel

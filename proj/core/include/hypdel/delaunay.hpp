#pragma once

#include "hypdel/hull.hpp"
#include "hypdel/models.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypdel {

struct DelaunayOptions {
  std::uint64_t seed = 0;
  /// Float mode: facets whose planes agree to this tolerance are merged
  /// into one polytopal cell. Ignored in exact mode.
  double eps = 1e-9;
};

struct DelaunayCell {
  int id = -1;
  int dim = 0;
  /// Indices into Tessellation::sites, ascending.
  std::vector<int> vertices;
  /// Support plane touching the lifted hull exactly in this cell.
  QPlane support;
  Circumsphere sphere;
  std::vector<int> faces;
  std::vector<int> cofaces;
  /// Not a face of any other cell.
  bool top = false;
};

struct Tessellation {
  std::vector<HPoint> sites;
  Mode mode = Mode::exact;
  /// Dimension n of the hyperbolic space.
  int n = 0;
  int top_dim = 0;
  std::vector<DelaunayCell> cells;
  std::vector<std::string> warnings;
  /// First copy of every site; duplicates take part in no cell.
  std::vector<int> representative;
  std::uint64_t seed = 0;

  /// Cell with exactly this vertex set, or -1.
  int find(const std::vector<int>& vertices) const;
  std::vector<int> cells_of_dim(int dim) const;
};

/// Throws GeometryError for an empty site list.
Tessellation delaunay_tessellation(const std::vector<HPoint>& sites, const DelaunayOptions& opts = {});

/// Recomputes the circumsphere of a cell and verifies that its convex side
/// holds no site; throws GeometryError if the certificate fails.
Circumsphere cell_circumsphere(const Tessellation& t, int cell_id);

struct ComplexReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that faces of cells are cells, that cells meet in common faces,
/// that the top cells cover the hull of the sites (sampled), and every
/// empty-sphere certificate.
ComplexReport check_complex(const Tessellation& t, std::uint64_t seed = 0, int samples = 200);

/// Site coordinates the combinatorics were computed from.
std::vector<QVec> exact_sites(const std::vector<HPoint>& sites);

}  // namespace hypdel

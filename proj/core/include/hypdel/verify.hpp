#pragma once

// Brute-force oracles for cross-checking the hull pipeline. They share only
// the Lorentz kernel and exact linear algebra with it.

#include "hypdel/voronoi.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hypdel {

using CellSet = std::vector<std::vector<int>>;

/// Every cell (as a sorted vertex list, all dimensions) of the Delaunay
/// tessellation, from the empty-circumsphere characterization: subsets of
/// n + 1 sites whose hypersphere has no site on its convex side, closed
/// under faces. Exact sites only, at most 12. Throws GeometryError
/// otherwise, and when the sites span an affine subspace through 0.
CellSet brute_force_delaunay(const std::vector<HPoint>& sites);

/// Cells of the geometric dual from Euclidean Delaunay faces of the
/// Poincare-disk coordinates whose circumdisks lie strictly inside the unit
/// disk. H^2 and exact sites only.
CellSet poincare_euclidean_oracle(const std::vector<HPoint>& sites);

/// Vertex sets of the tessellation's cells, sorted.
CellSet cell_set(const Tessellation& t);
CellSet cell_set(const Tessellation& t, const std::vector<int>& ids);

struct OracleReport {
  std::string instance_hash;
  std::string oracle;
  bool match = true;
  /// Found by the oracle only / by the pipeline only.
  CellSet missing;
  CellSet extra;
  int samples = 0;
  int mismatches = 0;
};

OracleReport compare_cells(const std::string& oracle, const std::vector<HPoint>& sites, const CellSet& expected,
                           const CellSet& got);

/// Samples uniformly from a hyperbolic ball around the site centroid and
/// compares the nearest sites (exact) with membership in the Voronoi
/// n-cells (exact half-space tests). `extra` witnesses of every face are
/// checked as well.
OracleReport voronoi_membership_oracle(const Tessellation& t, const VoronoiDiagram& v, int samples,
                                       std::uint64_t seed);

/// x = (1,0,0) and y, z = (3/2, a, +-b) with d(x,y) = d(x,z) = arccosh 3/2.
/// "left" (a = 1), "middle" (a = 1/2) and "right" (a = 1/5) give a metric
/// circle, a horocycle and an equidistant curve through the three points.
std::vector<HPoint> three_point_config(const std::string& name);

/// Same shape with y = (3/2, a, b) for any rational a, b with a^2 + b^2 = 5/4.
std::vector<HPoint> three_point_config(const Rational& a, const Rational& b);

/// Stable 64-bit hash of the exact site coordinates, as 16 hex digits.
std::string instance_hash(const std::vector<HPoint>& sites);

/// Random sites of H^2 with Poincare coordinates p/q, q <= 64, |p| < q,
/// strictly inside the disk and distinct.
std::vector<HPoint> random_poincare_sites(std::mt19937_64& rng, int count);

/// `count` instances of min_sites..max_sites random sites each.
std::vector<std::vector<HPoint>> random_corpus(std::uint64_t seed, int count = 500, int min_sites = 4,
                                               int max_sites = 12);

}  // namespace hypdel

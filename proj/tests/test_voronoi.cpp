#include "hypdel/verify.hpp"
#include "hypdel/voronoi.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace hypdel;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

HPoint poincare(Rational a, Rational b) { return lift(ModelPoint{Model::poincare_ball, {a, b}}); }

std::vector<HPoint> symmetric_triple() {
  std::vector<HPoint> s;
  for (int k = 0; k < 3; ++k) {
    double th = 2 * M_PI * k / 3;
    s.push_back(HPoint::from_float(DVec{std::cosh(1.0), std::sinh(1.0) * std::cos(th), std::sinh(1.0) * std::sin(th)}));
  }
  return s;
}

int count_dim(const VoronoiDiagram& v, int dim) {
  return static_cast<int>(std::count_if(v.cells.begin(), v.cells.end(), [&](const auto& c) { return c.dim == dim; }));
}

std::vector<std::vector<int>> dual_vertex_sets(const Tessellation& t, const GeometricDual& d) {
  std::vector<std::vector<int>> out;
  for (int id : d.cells) out.push_back(t.cells[id].vertices);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Bisector, MirrorSymmetry) {
  QPlane b = bisector(poincare(q(1, 2), 0), poincare(q(-1, 2), 0));
  EXPECT_EQ(b.u, (QVec{0, 1, 0}));
  EXPECT_EQ(b.c, 0);
}

TEST(Bisector, AlongTheAxis) {
  HPoint s0 = HPoint::from_exact(QVec{1, 0, 0});
  HPoint s1 = HPoint::from_float(DVec{std::cosh(2.0), std::sinh(2.0), 0});
  DVec u = to_double(bisector(s0, s1).u);
  DVec want{1 - std::cosh(2.0), -std::sinh(2.0), 0};
  // Parallel to want.
  EXPECT_NEAR(u[0] * want[1] - u[1] * want[0], 0, 1e-9 * std::sqrt(dot(u, u) * dot(want, want)));
  EXPECT_EQ(u[2], 0);
  EXPECT_NEAR(minkowski(DVec{std::cosh(1.0), std::sinh(1.0), 0}, u), 0, 1e-9 * std::sqrt(dot(u, u)));
}

TEST(Bisector, EqualSitesThrow) {
  EXPECT_THROW(bisector(poincare(0, 0), poincare(0, 0)), GeometryError);
}

TEST(VoronoiDiagram, TwoSites) {
  VoronoiDiagram v = voronoi_diagram({poincare(q(1, 2), 0), poincare(q(-1, 2), 0)});
  EXPECT_EQ(count_dim(v, 2), 2);
  EXPECT_EQ(count_dim(v, 1), 1);
  EXPECT_EQ(count_dim(v, 0), 0);
  int edge = v.find({0, 1});
  ASSERT_GE(edge, 0);
  ASSERT_EQ(v.cells[edge].equalities.size(), 1U);
  // x o (s1 - s0) = 0, oriented from site 0.
  EXPECT_EQ(v.cells[edge].equalities.front().u, (QVec{0, -1, 0}));
  // The half-plane of site 0 is {x1 >= 0}.
  const VoronoiCell& c0 = v.cells[v.site_cell[0]];
  EXPECT_TRUE(c0.contains(poincare(q(1, 3), q(1, 5)).q()));
  EXPECT_FALSE(c0.contains(poincare(q(-1, 3), q(1, 5)).q()));
}

TEST(VoronoiDiagram, SymmetricTriple) {
  VoronoiDiagram v = voronoi_diagram(symmetric_triple());
  EXPECT_EQ(count_dim(v, 2), 3);
  EXPECT_EQ(count_dim(v, 1), 3);
  ASSERT_EQ(count_dim(v, 0), 1);
  for (const auto& c : v.cells)
    if (c.dim == 0) {
      EXPECT_NEAR(c.point[0], 1, 1e-9);
      EXPECT_NEAR(c.point[1], 0, 1e-9);
      EXPECT_NEAR(c.point[2], 0, 1e-9);
    }
}

TEST(VoronoiDiagram, NoVertexForHorocycleAndEquidistant) {
  for (const char* name : {"middle", "right"}) {
    VoronoiDiagram v = voronoi_diagram(three_point_config(name));
    EXPECT_EQ(count_dim(v, 0), 0) << name;
    EXPECT_EQ(count_dim(v, 1), 2) << name;
    EXPECT_EQ(count_dim(v, 2), 3) << name;
  }
  EXPECT_EQ(count_dim(voronoi_diagram(three_point_config("left")), 0), 1);
}

TEST(GeometricDual, LeftConfigurationIsEverything) {
  Tessellation t = delaunay_tessellation(three_point_config("left"));
  GeometricDual d = geometric_dual(t);
  EXPECT_EQ(d.cells.size(), t.cells.size());
  int tri = t.cells_of_dim(2).front();
  VoronoiDiagram v = voronoi_diagram(t);
  bool found = false;
  for (const auto& p : d.pairs)
    if (p.delaunay_cell_id == tri) {
      EXPECT_EQ(v.cells[p.voronoi_id].dim, 0);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(GeometricDual, MiddleAndRightDropTheTriangle) {
  std::vector<std::vector<int>> want{{0}, {0, 1}, {0, 2}, {1}, {2}};
  for (const char* name : {"middle", "right"}) {
    Tessellation t = delaunay_tessellation(three_point_config(name));
    EXPECT_EQ(dual_vertex_sets(t, geometric_dual(t)), want) << name;
    EXPECT_FALSE(is_geometric_dual(t, t.cells_of_dim(2).front()));
    EXPECT_FALSE(is_geometric_dual(t, t.find({1, 2})));
  }
}

TEST(GeometricDual, SingleSite) {
  Tessellation t = delaunay_tessellation({poincare(q(1, 5), q(1, 7))});
  VoronoiDiagram v = voronoi_diagram(t);
  GeometricDual d = geometric_dual(t, v);
  ASSERT_EQ(d.cells.size(), 1U);
  ASSERT_EQ(d.pairs.size(), 1U);
  EXPECT_EQ(v.cells[d.pairs.front().voronoi_id].dim, 2);
  EXPECT_TRUE(v.cells[d.pairs.front().voronoi_id].halfspaces.empty());
}

TEST(Contravariance, SymmetricTriple) {
  Tessellation t = delaunay_tessellation(symmetric_triple());
  VoronoiDiagram v = voronoi_diagram(t);
  ContravarianceReport r = check_contravariance(t, v);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations.front());
  for (const auto& p : geometric_dual(t, v).pairs)
    EXPECT_EQ(v.cells[p.voronoi_id].dim + t.cells[p.delaunay_cell_id].dim, 2);
}

TEST(Contravariance, TwoSites) {
  Tessellation t = delaunay_tessellation({poincare(q(1, 2), 0), poincare(0, q(-1, 3))});
  VoronoiDiagram v = voronoi_diagram(t);
  EXPECT_TRUE(check_contravariance(t, v).ok());
  int edge = v.find({0, 1});
  ASSERT_GE(edge, 0);
  EXPECT_EQ(t.cells[v.cells[edge].dual_cell].vertices, (std::vector<int>{0, 1}));
  for (int s = 0; s < 2; ++s) EXPECT_EQ(t.cells[v.cells[v.site_cell[s]].dual_cell].vertices, (std::vector<int>{s}));
}

TEST(Contravariance, RandomInstances) {
  for (const auto& sites : random_corpus(71, 60, 4, 10)) {
    Tessellation t = delaunay_tessellation(sites);
    ContravarianceReport r = check_contravariance(t, voronoi_diagram(t));
    EXPECT_TRUE(r.ok()) << instance_hash(sites) << ": " << (r.ok() ? "" : r.violations.front());
  }
}

TEST(VoronoiProperty, DualIsSubcomplexAndMetricExactlyOnTopCells) {
  for (const auto& sites : random_corpus(81, 80)) {
    Tessellation t = delaunay_tessellation(sites);
    VoronoiDiagram v = voronoi_diagram(t);
    GeometricDual d = geometric_dual(t, v);
    for (int id : d.cells) {
      ASSERT_GE(id, 0);
      ASSERT_LT(id, static_cast<int>(t.cells.size()));
      for (int f : t.cells[id].faces) EXPECT_TRUE(std::binary_search(d.cells.begin(), d.cells.end(), f));
    }
    for (int id : t.cells_of_dim(2)) {
      bool dual = std::binary_search(d.cells.begin(), d.cells.end(), id);
      EXPECT_EQ(dual, t.cells[id].sphere.kind == SphereKind::metric);
    }
    for (const auto& p : d.pairs) EXPECT_EQ(v.cells[p.voronoi_id].dim + t.cells[p.delaunay_cell_id].dim, 2);
  }
}

TEST(VoronoiProperty, MembershipAgreesWithNearestSites) {
  int k = 0;
  for (const auto& sites : random_corpus(91, 20)) {
    Tessellation t = delaunay_tessellation(sites);
    OracleReport r = voronoi_membership_oracle(t, voronoi_diagram(t), 1000, 91 + k++);
    EXPECT_EQ(r.mismatches, 0) << r.instance_hash;
    EXPECT_GE(r.samples, 1000);
  }
}

TEST(NearestSites, TiesReturnAll) {
  Tessellation t = delaunay_tessellation({poincare(q(1, 2), 0), poincare(q(-1, 2), 0), poincare(0, q(1, 2))});
  EXPECT_EQ(nearest_sites(t, QVec{1, 0, 0}), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(nearest_sites(t, poincare(q(1, 2), 0).q()), (std::vector<int>{0}));
}

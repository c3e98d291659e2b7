#include "hypdel/orbit.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hypdel;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

const HPoint& origin() {
  static const HPoint o = HPoint::from_exact(QVec{1, 0, 0});
  return o;
}

Matrix<Rational> identity3() {
  Matrix<Rational> m(3, 3);
  for (int i = 0; i < 3; ++i) m(i, i) = 1;
  return m;
}

bool same(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

TEST(Sl2ToSo21, Identity) { EXPECT_TRUE(same(sl2_to_so21(SL2{}).matrix, identity3())); }

TEST(Sl2ToSo21, KernelIsPlusMinusOne) {
  SL2 m{2, 3, q(1, 2), q(5, 4)};
  SL2 neg{-m.a, -m.b, -m.c, -m.d};
  EXPECT_TRUE(same(sl2_to_so21(m).matrix, sl2_to_so21(neg).matrix));
  EXPECT_TRUE(sl2_to_so21(m).preserves_form());
  EXPECT_TRUE(sl2_to_so21(m).orthochronous());
}

TEST(Sl2ToSo21, RejectsDeterminantOtherThanOne) { EXPECT_THROW(sl2_to_so21(SL2{2, 0, 0, 1}), GeometryError); }

TEST(Sl2ToSo21, ParabolicFixesOneLightLikeLine) {
  Matrix<Rational> m = sl2_to_so21(SL2{1, 1, 0, 1}).matrix;
  for (int i = 0; i < 3; ++i) m(i, i) -= 1;
  auto fixed = nullspace(m);
  ASSERT_EQ(fixed.size(), 1U);
  QVec u(fixed.front());
  EXPECT_EQ(classify_vector(u), CausalType::light_like);
}

TEST(GroupElement, InverseAndProduct) {
  auto gens = punctured_torus_generators();
  GroupElement g = gens[0] * gens[1].inverse();
  EXPECT_EQ(g.word, "aB");
  EXPECT_TRUE(same((g * g.inverse()).matrix, identity3()));
  EXPECT_EQ(g.inverse().word, "bA");
  QVec x{q(5, 3), q(4, 3), 0};
  EXPECT_EQ(g.inverse().apply(g.apply(x)), x);
}

TEST(OrbitBall, LengthZeroIsTheBases) {
  OrbitSet o = orbit_ball(punctured_torus_generators(), {origin()}, 0);
  ASSERT_EQ(o.points.size(), 1U);
  EXPECT_EQ(o.points.front(), origin());
}

TEST(OrbitBall, FreeGroupBallCount) {
  auto gens = punctured_torus_generators();
  for (int L = 0; L <= 5; ++L) {
    OrbitSet o = orbit_ball(gens, {origin()}, L);
    EXPECT_EQ(o.points.size(), static_cast<std::size_t>(2 * std::pow(3, L) - 1)) << L;
    for (const auto& g : o.elements) EXPECT_TRUE(g.preserves_form());
  }
}

TEST(OrbitBall, IdentityGeneratorKeepsBases) {
  std::vector<GroupElement> gens = label_generators({identity_element()});
  HPoint p = lift(ModelPoint{Model::poincare_ball, {q(1, 3), q(1, 4)}});
  for (int L = 0; L <= 4; ++L) EXPECT_EQ(orbit_ball(gens, {origin(), p}, L).points.size(), 2U);
}

TEST(OrbitBall, ProvenanceAndLookup) {
  OrbitSet o = orbit_ball(punctured_torus_generators(), {origin()}, 2);
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    EXPECT_EQ(o.index_of(o.points[i].q()), static_cast<int>(i));
    EXPECT_EQ(static_cast<int>(o.provenance[i].word.size()), o.provenance[i].length);
    EXPECT_LE(o.provenance[i].length, 2);
  }
  EXPECT_EQ(o.index_of(QVec{q(5, 3), q(4, 3), 0}), -1);
  EXPECT_THROW(orbit_ball(punctured_torus_generators(), {origin()}, -1), GeometryError);
}

TEST(InvarianceReport, LengthZeroIsDegenerate) {
  auto gens = punctured_torus_generators();
  OrbitSet o = orbit_ball(gens, {origin()}, 0);
  InvarianceReport r = invariance_report(delaunay_tessellation(o.points), o, gens);
  EXPECT_TRUE(r.degenerate);
}

TEST(InvarianceReport, ParabolicToyHasOneVertexOrbit) {
  auto gens = label_generators({sl2_to_so21(SL2{1, 1, 0, 1})});
  OrbitSet o = orbit_ball(gens, {origin()}, 6);
  EXPECT_EQ(o.points.size(), 13U);
  InvarianceReport r = invariance_report(delaunay_tessellation(o.points), o, gens);
  ASSERT_FALSE(r.degenerate);
  ASSERT_FALSE(r.orbit_counts.empty());
  EXPECT_EQ(r.orbit_counts[0], 1);
  EXPECT_EQ(r.action_failures, 0);
}

TEST(InvarianceReport, PuncturedTorusStabilizesWithWideMargin) {
  auto gens = punctured_torus_generators();
  std::vector<InvarianceReport> reports;
  for (int L = 3; L <= 5; ++L) {
    OrbitSet o = orbit_ball(gens, {origin()}, L);
    reports.push_back(invariance_report(delaunay_tessellation(o.points), o, gens, 2));
    EXPECT_EQ(reports.back().action_failures, 0);
    EXPECT_EQ(reports.back().time_like_faces, 0);
  }
  EXPECT_TRUE(counts_stabilized(reports[0], reports[1]));
  EXPECT_TRUE(counts_stabilized(reports[1], reports[2]));
  EXPECT_EQ(reports[2].orbit_counts, (std::vector<int>{1, 4, 2}));
}

TEST(CuspDiagnostic, SinglePointHasNoHorosphericalCandidate) {
  Tessellation t = delaunay_tessellation({origin()});
  CuspDiagnostic d = cusp_cell_diagnostic(t, QVec{1, -1, 0});
  for (const auto& c : d.cells) EXPECT_LT(sgn(c.norm), 0);
}

TEST(CuspDiagnostic, PuncturedTorusCuspCellIsHorospherical) {
  auto gens = punctured_torus_generators();
  OrbitSet o = orbit_ball(gens, {origin()}, 3);
  CuspDiagnostic d = cusp_cell_diagnostic(delaunay_tessellation(o.points), QVec{1, -1, 0});
  ASSERT_GE(d.closest, 0);
  EXPECT_EQ(d.cells[d.closest].norm, 0);
}

TEST(Trend, Verdicts) {
  EXPECT_TRUE(trend({3, 2, 1}).strictly_decreasing);
  EXPECT_FALSE(trend({3, 3, 1}).strictly_decreasing);
  EXPECT_TRUE(trend({3, 3, 1}).non_increasing);
  EXPECT_TRUE(trend({1, 2, 3}).strictly_increasing);
  EXPECT_FALSE(trend({1, 2, 2}).strictly_increasing);
}

TEST(BadExample, Points) {
  auto zero = bad_example_points(1.25, 0);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_NEAR(zero[0].d()[0], 1, 1e-15);
  EXPECT_NEAR(zero[0].d()[1], 0, 1e-15);
  EXPECT_NEAR(zero[0].d()[2], 0, 1e-15);

  auto pts = bad_example_points(1.25, 8);
  EXPECT_EQ(pts.size(), 17U);
  // p_n and p_{-n} are mirror images in x2 = 0 (the imaginary axis).
  for (int n = 1; n <= 8; ++n) {
    const DVec& a = pts[bad_example_index(n)].d();
    const DVec& b = pts[bad_example_index(-n)].d();
    EXPECT_NEAR(a[0], b[0], 1e-12 * a[0]);
    EXPECT_NEAR(a[1], b[1], 1e-12 * a[0]);
    EXPECT_NEAR(a[2], -b[2], 1e-12 * a[0]);
    // Height 1/(n+1) in the upper half-plane.
    EXPECT_NEAR(to_upper_half(a)[1], 1.0 / (n + 1), 1e-12);
  }
  EXPECT_EQ(bad_example_index(0), 0);
  EXPECT_EQ(bad_example_index(1), 1);
  EXPECT_EQ(bad_example_index(-1), 2);
  EXPECT_EQ(bad_example_index(-3), 6);
  EXPECT_THROW(bad_example_points(1.0, 4), GeometryError);
}

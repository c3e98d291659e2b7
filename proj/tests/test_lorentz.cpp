#include "hypdel/lorentz.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hypdel;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

QVec random_qvec(std::mt19937_64& rng, std::size_t n = 3) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  QVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = Rational(num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

}  // namespace

TEST(Minkowski, Examples) {
  EXPECT_EQ(minkowski(QVec{1, 0, 0}, QVec{1, 0, 0}), -1);
  EXPECT_EQ(minkowski(QVec{1, 1, 0}, QVec{1, 1, 0}), 0);
  EXPECT_EQ(minkowski(QVec{q(5, 3), q(4, 3), 0}, QVec{1, 0, 0}), q(-5, 3));
}

TEST(Minkowski, DimensionMismatchThrows) {
  EXPECT_THROW(minkowski(QVec{1, 0, 0}, QVec{1, 0}), GeometryError);
}

TEST(Minkowski, BarConvertsEuclideanPairing) {
  QVec eta{2, q(1, 3), -5}, v{q(7, 2), 1, q(-2, 9)};
  EXPECT_EQ(minkowski(bar(eta), v), -dot(eta, v));
}

TEST(ClassifyVector, Examples) {
  EXPECT_EQ(classify_vector(QVec{1, 0, 0}), CausalType::time_like);
  EXPECT_EQ(classify_vector(QVec{1, 1, 0}), CausalType::light_like);
  EXPECT_EQ(classify_vector(QVec{0, 1, 0}), CausalType::space_like);
  EXPECT_EQ(classify_vector(QVec{0, 0, 0}), CausalType::zero);
  EXPECT_EQ(classify_vector(DVec{1, 1, 0}), CausalType::light_like);
  EXPECT_EQ(classify_vector(DVec{1, 1 + 1e-13, 0}), CausalType::light_like);
  EXPECT_EQ(classify_vector(DVec{1, 0.9, 0}), CausalType::time_like);
}

TEST(OrthogonalComplement, Examples) {
  QVec a = orthogonal_complement(QSubspace({QVec{0, 1, 0}, QVec{0, 0, 1}}));
  EXPECT_EQ(a, (QVec{1, 0, 0}));
  EXPECT_EQ(classify_vector(a), CausalType::time_like);

  QVec b = orthogonal_complement(QSubspace({QVec{1, 1, 0}, QVec{0, 0, 1}}));
  EXPECT_EQ(b, (QVec{1, 1, 0}));
  EXPECT_EQ(classify_vector(b), CausalType::light_like);

  QVec c = orthogonal_complement(QSubspace({QVec{1, 0, 0}, QVec{0, 1, 0}}));
  EXPECT_EQ(c, (QVec{0, 0, 1}));
  EXPECT_EQ(classify_vector(c), CausalType::space_like);
}

TEST(OrthogonalComplement, IsOrthogonalToBasis) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    QVec x = random_qvec(rng), y = random_qvec(rng);
    QSubspace v({x, y});
    QVec u = orthogonal_complement(v);
    EXPECT_EQ(minkowski(u, x), 0);
    EXPECT_EQ(minkowski(u, y), 0);
  }
}

TEST(OrthogonalComplement, TwiceGivesMultiple) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    QVec u = random_qvec(rng);
    if (u.is_zero()) continue;
    // Basis of u-perp from the Euclidean kernel of bar(u).
    Matrix<Rational> m(1, 3);
    QVec b = bar(u);
    for (int k = 0; k < 3; ++k) m(0, k) = b[k];
    auto ker = nullspace(m);
    ASSERT_EQ(ker.size(), 2U);
    QVec w = orthogonal_complement(QSubspace({QVec(ker[0]), QVec(ker[1])}));
    // w and u are parallel.
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) EXPECT_EQ(w[a] * u[c], w[c] * u[a]);
  }
}

TEST(ClassifySubspace, Examples) {
  EXPECT_EQ(classify_subspace(QSubspace({QVec{1, 1, 0}})), CausalType::light_like);
  EXPECT_EQ(classify_subspace(QSubspace({QVec{1, 0, 0}, QVec{0, 1, 0}})), CausalType::time_like);
  EXPECT_EQ(classify_subspace(QSubspace({QVec{0, 1, 0}, QVec{0, 0, 1}})), CausalType::space_like);
  EXPECT_EQ(classify_subspace(DSubspace({DVec{1, 1, 0}, DVec{0, 0, 1}})), CausalType::light_like);
}

TEST(Subspace, RejectsDependentBasis) {
  EXPECT_THROW(QSubspace({QVec{1, 1, 0}, QVec{2, 2, 0}}), GeometryError);
  EXPECT_THROW(QSubspace({}), GeometryError);
}

TEST(LorentzProperty, BilinearityExact) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    QVec x = random_qvec(rng), y = random_qvec(rng), z = random_qvec(rng);
    Rational a = random_qvec(rng, 1)[0], b = random_qvec(rng, 1)[0];
    EXPECT_EQ(minkowski(a * x + b * y, z), a * minkowski(x, z) + b * minkowski(y, z));
  }
}

TEST(LorentzProperty, BilinearityFloat) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    DVec x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng)}, z{u(rng), u(rng), u(rng)};
    double a = u(rng), b = u(rng);
    double lhs = minkowski(a * x + b * y, z), rhs = a * minkowski(x, z) + b * minkowski(y, z);
    double scale = std::abs(a) * std::sqrt(dot(x, x) * dot(z, z)) + std::abs(b) * std::sqrt(dot(y, y) * dot(z, z));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * scale);
  }
}

TEST(LorentzProperty, ReverseCauchySchwarz) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    QVec x = random_qvec(rng), y = random_qvec(rng);
    if (sgn(x[0]) <= 0 || sgn(y[0]) <= 0) continue;
    Rational xx = minkowski(x, x), yy = minkowski(y, y);
    if (sgn(xx) > 0 || sgn(yy) > 0) continue;
    Rational xy = minkowski(x, y);
    // x o y <= -sqrt(xx yy)  <=>  x o y <= 0 and (x o y)^2 >= xx yy.
    EXPECT_LE(sgn(xy), 0);
    EXPECT_GE(xy * xy, xx * yy);
    bool proportional = x[0] * y[1] == x[1] * y[0] && x[0] * y[2] == x[2] * y[0];
    if (!proportional && sgn(xx) < 0) EXPECT_GT(xy * xy, xx * yy);
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(LorentzProperty, GramSignatureOfAnyBasis) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    QVec a = random_qvec(rng), b = random_qvec(rng), c = random_qvec(rng);
    Matrix<Rational> m(3, 3);
    for (int k = 0; k < 3; ++k) {
      m(0, k) = a[k];
      m(1, k) = b[k];
      m(2, k) = c[k];
    }
    if (sgn(determinant(m)) == 0) continue;
    Inertia in = gram_inertia(QSubspace({a, b, c}));
    EXPECT_EQ(in.negative, 1);
    EXPECT_EQ(in.zero, 0);
    EXPECT_EQ(in.positive, 2);
  }
}

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-1.25"), q(-5, 4));
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("3e-2"), q(3, 100));
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(parse_rational("-3/9")), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_EQ(exact_from_double(0.5), q(1, 2));
}

TEST(Rational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(to_double(parse_rational("3.2500000000000004")), 3.2500000000000004);
  EXPECT_EQ(to_double(parse_rational("-3.2500000000000004")), -3.2500000000000004);
  EXPECT_EQ(to_double(q(1, 3)), 1.0 / 3);
  EXPECT_EQ(to_double(q(-2, 3)), -2.0 / 3);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng);
    EXPECT_EQ(to_double(exact_from_double(x)), x);
    // Strictly between x and its successor, nearer to x.
    double y = std::nextafter(x, HUGE_VAL);
    Rational mid = (exact_from_double(x) * 3 + exact_from_double(y)) / 4;
    EXPECT_EQ(to_double(mid), x);
    mid = (exact_from_double(x) + exact_from_double(y) * 3) / 4;
    EXPECT_EQ(to_double(mid), y);
  }
}

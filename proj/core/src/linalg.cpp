#include "hypdel/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hypdel {

namespace {

struct ExactPivot {
  bool is_zero(const Rational& x) const { return sgn(x) == 0; }
  bool better(const Rational&, const Rational&) const { return false; }
};

struct FloatPivot {
  double tol;
  bool is_zero(double x) const { return std::abs(x) <= tol; }
  bool better(double candidate, double current) const { return std::abs(candidate) > std::abs(current); }
};

template <class T>
auto make_pivot_policy(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)m;
    return ExactPivot{};
  } else {
    double largest = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) largest = std::max(largest, std::abs(m(r, c)));
    return FloatPivot{1e-12 * std::max(largest, 1e-300)};
  }
}

}  // namespace

template <class T>
RowEchelon<T> row_reduce(Matrix<T> m) {
  const auto policy = make_pivot_policy(m);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (policy.is_zero(m(r, col))) continue;
      if (best == m.rows() || policy.better(m(r, col), m(best, col))) best = r;
      if constexpr (std::is_same_v<T, Rational>) break;
    }
    if (best == m.rows()) {
      if constexpr (!std::is_same_v<T, Rational>) {
        for (std::size_t r = row; r < m.rows(); ++r) m(r, col) = 0.0;
      }
      continue;
    }
    m.swap_rows(row, best);
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || policy.is_zero(m(r, col))) continue;
      T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v[ech.pivot_cols[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& rhs) {
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  auto ech = row_reduce(aug);
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) x[ech.pivot_cols[i]] = ech.reduced(i, m.cols());
  return x;
}

template <class T>
T determinant(Matrix<T> m) {
  const auto policy = make_pivot_policy(m);
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = col; r < n; ++r) {
      if (policy.is_zero(m(r, col))) continue;
      if (best == n || policy.better(m(r, col), m(best, col))) best = r;
      if constexpr (std::is_same_v<T, Rational>) break;
    }
    if (best == n) return T(0);
    if (best != col) {
      m.swap_rows(best, col);
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (policy.is_zero(m(r, col))) continue;
      T factor = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

std::vector<Rational> primitive_direction(std::vector<Rational> v) {
  mpz_class lcm_den = 1;
  for (auto& x : v) {
    x.canonicalize();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (auto& x : v) {
    x *= lcm_den;
    x.canonicalize();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g != 0) {
    for (auto& x : v) {
      x /= g;
      x.canonicalize();
    }
  }
  return v;
}

template RowEchelon<Rational> row_reduce(Matrix<Rational>);
template RowEchelon<double> row_reduce(Matrix<double>);
template std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>&);
template std::vector<std::vector<double>> nullspace(const Matrix<double>&);
template std::optional<std::vector<Rational>> solve(const Matrix<Rational>&, const std::vector<Rational>&);
template std::optional<std::vector<double>> solve(const Matrix<double>&, const std::vector<double>&);
template Rational determinant(Matrix<Rational>);
template double determinant(Matrix<double>);

}  // namespace hypdel

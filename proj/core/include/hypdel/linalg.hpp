#pragma once

#include "hypdel/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hypdel {

/// Dense row-major matrix. Only what the geometry kernels need: row
/// reduction, rank, kernels and consistent solves.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Result of reducing a matrix to reduced row echelon form.
template <class T>
struct RowEchelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Exact for Rational; for double, pivots below 1e-12 times the largest
/// entry are treated as zero.
template <class T>
RowEchelon<T> row_reduce(Matrix<T> m);

template <class T>
std::size_t rank(const Matrix<T>& m) { return row_reduce(m).rank(); }

/// Basis of {x : m x = 0}, one vector per free column.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m);

/// Some solution of m x = rhs (free variables set to zero), or nullopt when
/// the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& rhs);

template <class T>
T determinant(Matrix<T> m);

/// Scales a rational vector to the primitive integer vector on the same ray.
std::vector<Rational> primitive_direction(std::vector<Rational> v);

}  // namespace hypdel

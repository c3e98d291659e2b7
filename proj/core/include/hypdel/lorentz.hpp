#pragma once

// Lorentzian linear algebra on R^{n+1} with the form
//   x o y = -x0*y0 + x1*y1 + ... + xn*yn.
// Every routine exists for exact rationals and for doubles; the rational
// versions decide signs exactly, the double versions use a normalized
// epsilon (see kClassifyEps).

#include "hypdel/linalg.hpp"
#include "hypdel/rational.hpp"

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace hypdel {

enum class CausalType { time_like, light_like, space_like, zero };

std::string to_string(CausalType t);

/// Threshold on v o v / |v|^2 below which a float vector counts as light-like.
inline constexpr double kClassifyEps = 1e-10;

template <class T>
class LorentzVec {
public:
  LorentzVec() = default;
  explicit LorentzVec(std::size_t size) : c_(size, T(0)) {}
  explicit LorentzVec(std::vector<T> coords) : c_(std::move(coords)) {}
  LorentzVec(std::initializer_list<T> coords) : c_(coords) {}

  /// Number of coordinates (n + 1 for a vector of R^{n+1}).
  std::size_t size() const { return c_.size(); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coords() const { return c_; }

  LorentzVec& operator+=(const LorentzVec& o);
  LorentzVec& operator-=(const LorentzVec& o);
  LorentzVec& operator*=(const T& s);

  friend LorentzVec operator+(LorentzVec a, const LorentzVec& b) { return a += b; }
  friend LorentzVec operator-(LorentzVec a, const LorentzVec& b) { return a -= b; }
  friend LorentzVec operator*(const T& s, LorentzVec a) { return a *= s; }
  friend LorentzVec operator*(LorentzVec a, const T& s) { return a *= s; }
  friend LorentzVec operator-(LorentzVec a) { return a *= T(-1); }
  friend bool operator==(const LorentzVec& a, const LorentzVec& b) { return a.c_ == b.c_; }
  friend bool operator<(const LorentzVec& a, const LorentzVec& b) { return a.c_ < b.c_; }

  bool is_zero() const;

private:
  std::vector<T> c_;
};

using QVec = LorentzVec<Rational>;
using DVec = LorentzVec<double>;

DVec to_double(const QVec& v);
inline DVec to_double(const DVec& v) { return v; }
QVec exact_from_double(const DVec& v);

std::ostream& operator<<(std::ostream& os, const QVec& v);
std::ostream& operator<<(std::ostream& os, const DVec& v);

/// The Lorentz form. Throws GeometryError on a dimension mismatch.
template <class T>
T minkowski(const LorentzVec<T>& x, const LorentzVec<T>& y);

/// Euclidean dot product.
template <class T>
T dot(const LorentzVec<T>& x, const LorentzVec<T>& y);

/// The involution (e0, e1, ..., en) -> (e0, -e1, ..., -en); it satisfies
/// bar(eta) o v = -(eta . v) and converts Euclidean normals to Lorentz normals.
template <class T>
LorentzVec<T> bar(LorentzVec<T> v);

CausalType classify_vector(const QVec& v);
CausalType classify_vector(const DVec& v, double eps = kClassifyEps);

/// A linear subspace given by a linearly independent basis.
template <class T>
class Subspace {
public:
  /// Throws GeometryError if the basis is empty, ragged or dependent.
  explicit Subspace(std::vector<LorentzVec<T>> basis);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return basis_.front().size(); }
  const std::vector<LorentzVec<T>>& basis() const { return basis_; }

private:
  std::vector<LorentzVec<T>> basis_;
};

using QSubspace = Subspace<Rational>;
using DSubspace = Subspace<double>;

/// Generator of the Lorentz-orthogonal complement of a hyperplane V (dim n in
/// R^{n+1}), scaled so the first nonzero coordinate is positive (and, for
/// rationals, primitive integral).
template <class T>
LorentzVec<T> orthogonal_complement(const Subspace<T>& v);

/// time_like iff V meets the time cone, light_like iff V is tangent to the
/// light cone, space_like otherwise. Decided from the inertia of the Gram
/// matrix under the Lorentz form.
CausalType classify_subspace(const QSubspace& v);
CausalType classify_subspace(const DSubspace& v, double eps = kClassifyEps);

/// Counts of (negative, zero, positive) eigenvalue signs of the Lorentz Gram
/// matrix of the basis. Exact for rationals.
struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};
Inertia gram_inertia(const QSubspace& v);
Inertia gram_inertia(const DSubspace& v, double eps = kClassifyEps);

}  // namespace hypdel

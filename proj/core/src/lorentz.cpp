#include "hypdel/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace hypdel {

std::string to_string(CausalType t) {
  switch (t) {
    case CausalType::time_like: return "time-like";
    case CausalType::light_like: return "light-like";
    case CausalType::space_like: return "space-like";
    case CausalType::zero: return "zero";
  }
  return "unknown";
}

template <class T>
LorentzVec<T>& LorentzVec<T>::operator+=(const LorentzVec& o) {
  if (o.size() != size()) throw GeometryError("dimension mismatch in vector sum");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <class T>
LorentzVec<T>& LorentzVec<T>::operator-=(const LorentzVec& o) {
  if (o.size() != size()) throw GeometryError("dimension mismatch in vector difference");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <class T>
LorentzVec<T>& LorentzVec<T>::operator*=(const T& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

template <class T>
bool LorentzVec<T>::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const T& x) { return x == T(0); });
}

template class LorentzVec<Rational>;
template class LorentzVec<double>;

DVec to_double(const QVec& v) {
  DVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

QVec exact_from_double(const DVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = exact_from_double(v[i]);
  return out;
}

std::ostream& operator<<(std::ostream& os, const QVec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const DVec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

template <class T>
T minkowski(const LorentzVec<T>& x, const LorentzVec<T>& y) {
  if (x.size() != y.size() || x.size() == 0) throw GeometryError("dimension mismatch in Lorentz product");
  T acc = -(x[0] * y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class T>
T dot(const LorentzVec<T>& x, const LorentzVec<T>& y) {
  if (x.size() != y.size()) throw GeometryError("dimension mismatch in dot product");
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class T>
LorentzVec<T> bar(LorentzVec<T> v) {
  for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
  return v;
}

template Rational minkowski(const QVec&, const QVec&);
template double minkowski(const DVec&, const DVec&);
template Rational dot(const QVec&, const QVec&);
template double dot(const DVec&, const DVec&);
template QVec bar(QVec);
template DVec bar(DVec);

CausalType classify_vector(const QVec& v) {
  if (v.is_zero()) return CausalType::zero;
  int s = sgn(minkowski(v, v));
  return s < 0 ? CausalType::time_like : (s == 0 ? CausalType::light_like : CausalType::space_like);
}

CausalType classify_vector(const DVec& v, double eps) {
  double norm2 = dot(v, v);
  if (norm2 == 0.0) return CausalType::zero;
  double q = minkowski(v, v) / norm2;
  return q < -eps ? CausalType::time_like : (q > eps ? CausalType::space_like : CausalType::light_like);
}

template <class T>
Subspace<T>::Subspace(std::vector<LorentzVec<T>> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw GeometryError("subspace needs a nonempty basis");
  const std::size_t n = basis_.front().size();
  Matrix<T> m(basis_.size(), n);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    if (basis_[r].size() != n) throw GeometryError("subspace basis vectors differ in dimension");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = basis_[r][c];
  }
  if (rank(m) != basis_.size()) throw GeometryError("subspace basis is linearly dependent");
}

template class Subspace<Rational>;
template class Subspace<double>;

template <class T>
LorentzVec<T> orthogonal_complement(const Subspace<T>& v) {
  const std::size_t n1 = v.ambient();
  if (v.dim() + 1 != n1) throw GeometryError("orthogonal_complement needs a hyperplane (dim n in R^{n+1})");
  // Rows are J*b so that row . u = b o u.
  Matrix<T> m(v.dim(), n1);
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const auto jb = bar(v.basis()[r]);
    m(r, 0) = -jb[0];
    for (std::size_t c = 1; c < n1; ++c) m(r, c) = -jb[c];
  }
  auto kernel = nullspace(m);
  if (kernel.size() != 1) throw GeometryError("degenerate basis in orthogonal_complement");
  auto u = kernel.front();
  if constexpr (std::is_same_v<T, Rational>) {
    u = primitive_direction(std::move(u));
  } else {
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : u) x /= norm;
  }
  auto first = std::find_if(u.begin(), u.end(), [](const T& x) { return x != T(0); });
  if (first != u.end() && *first < T(0)) {
    for (auto& x : u) x = -x;
  }
  return LorentzVec<T>(std::move(u));
}

template QVec orthogonal_complement(const QSubspace&);
template DVec orthogonal_complement(const DSubspace&);

namespace {

// Congruence diagonalization of a symmetric matrix; signs of the pivots give
// the inertia (Sylvester's law).
template <class T, class IsZero>
Inertia inertia_of(Matrix<T> g, IsZero is_zero) {
  Inertia out;
  const std::size_t k = g.rows();
  std::size_t step = 0;
  while (step < k) {
    std::size_t piv = k;
    if constexpr (std::is_same_v<T, Rational>) {
      for (std::size_t i = step; i < k && piv == k; ++i)
        if (!is_zero(g(i, i))) piv = i;
    } else {
      double best = 0.0;
      for (std::size_t i = step; i < k; ++i)
        if (!is_zero(g(i, i)) && std::abs(g(i, i)) > best) {
          best = std::abs(g(i, i));
          piv = i;
        }
    }
    if (piv == k) {
      // All remaining diagonal entries vanish; fold an off-diagonal pair.
      std::size_t pi = k, pj = k;
      for (std::size_t i = step; i < k && pi == k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (!is_zero(g(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == k) {
        out.zero += static_cast<int>(k - step);
        break;
      }
      for (std::size_t c = 0; c < k; ++c) g(pi, c) += g(pj, c);
      for (std::size_t r = 0; r < k; ++r) g(r, pi) += g(r, pj);
      piv = pi;
    }
    // Symmetric swap of piv into position step.
    g.swap_rows(step, piv);
    for (std::size_t r = 0; r < k; ++r) std::swap(g(r, step), g(r, piv));
    const T p = g(step, step);
    (p > T(0) ? out.positive : out.negative) += 1;
    for (std::size_t r = step + 1; r < k; ++r) {
      if (is_zero(g(r, step))) continue;
      T f = g(r, step) / p;
      for (std::size_t c = step; c < k; ++c) g(r, c) -= f * g(step, c);
      for (std::size_t c = step; c < k; ++c) g(c, r) = g(r, c);
    }
    ++step;
  }
  return out;
}

CausalType from_inertia(const Inertia& in) {
  if (in.negative > 0) return CausalType::time_like;
  if (in.zero > 0) return CausalType::light_like;
  return CausalType::space_like;
}

}  // namespace

Inertia gram_inertia(const QSubspace& v) {
  const auto& b = v.basis();
  Matrix<Rational> g(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g(i, j) = minkowski(b[i], b[j]);
  return inertia_of(std::move(g), [](const Rational& x) { return sgn(x) == 0; });
}

Inertia gram_inertia(const DSubspace& v, double eps) {
  std::vector<DVec> b = v.basis();
  for (auto& x : b) x *= 1.0 / std::sqrt(dot(x, x));
  Matrix<double> g(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g(i, j) = minkowski(b[i], b[j]);
  return inertia_of(std::move(g), [eps](double x) { return std::abs(x) <= eps; });
}

CausalType classify_subspace(const QSubspace& v) { return from_inertia(gram_inertia(v)); }
CausalType classify_subspace(const DSubspace& v, double eps) { return from_inertia(gram_inertia(v, eps)); }

}  // namespace hypdel

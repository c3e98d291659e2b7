#pragma once

// Hyperboloid-model geometry: charts, distance, geodesics, hyperspheres and
// their convex sides, horoball formulas.

#include "hypdel/lorentz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypdel {

enum class Mode { exact, floating };

std::string to_string(Mode m);

/// A point of H^n = {x o x = -1, x0 > 0}.
///
/// The rational coordinates are authoritative for every sign decision. In
/// float mode they are the exact binary values of the renormalized doubles,
/// so they sit on the hyperboloid only up to rounding; predicates never need
/// them to lie on it exactly.
class HPoint {
public:
  HPoint() = default;

  /// Requires v o v == -1 and v0 > 0 exactly.
  static HPoint from_exact(QVec v);
  /// Renormalizes v onto the sheet; rejects inputs off by more than 1e-9.
  static HPoint from_float(const DVec& v);
  /// Rebuilds a point from stored coordinates as they are (deserialization);
  /// float points keep their rounded coordinates bit for bit.
  static HPoint restore(QVec v, Mode mode);

  const QVec& q() const { return q_; }
  const DVec& d() const { return d_; }
  bool exact() const { return exact_; }
  /// n, the dimension of the hyperbolic space.
  std::size_t dim() const { return q_.size() - 1; }

  friend bool operator==(const HPoint& a, const HPoint& b) { return a.q_ == b.q_; }

private:
  QVec q_;
  DVec d_;
  bool exact_ = true;
};

enum class Model { hyperboloid, poincare_ball, klein_ball, upper_half_space };

std::string to_string(Model m);
/// Accepts "hyperboloid", "poincare", "poincare_ball", "klein", "klein_ball",
/// "halfplane", "upper_half", "upper_half_space".
Model parse_model(const std::string& name);

struct ModelPoint {
  Model model = Model::poincare_ball;
  std::vector<Rational> coords;
};

/// Chart to hyperboloid. In exact mode the result is rational whenever that
/// is possible; a Klein point whose lift is irrational is rejected (use float
/// mode for it).
HPoint lift(const ModelPoint& p, Mode mode = Mode::exact);

/// Inverse charts, exact on rational points.
std::vector<Rational> to_poincare(const QVec& x);
std::vector<double> to_poincare(const DVec& x);
std::vector<Rational> to_klein(const QVec& x);
std::vector<double> to_klein(const DVec& x);
/// Upper half-space (x_1..x_{n-1}, height), exact on rational points.
std::vector<Rational> to_upper_half(const QVec& x);
std::vector<double> to_upper_half(const DVec& x);

/// x / sqrt(-x o x) for a future time-like x.
HPoint project_to_hyperboloid(const DVec& x);
HPoint project_to_hyperboloid(const QVec& x);

double dist(const HPoint& x, const HPoint& y);

/// Arclength parametrization of the geodesic from x through y.
HPoint geodesic_point(const HPoint& x, const HPoint& y, double t);

/// e^{-t} x + sinh(t) u; requires u light-like, u0 > 0 and x o u = -1.
HPoint horoball_ray(const HPoint& x, const DVec& u, double t);

/// {x : x o u = c}.
template <class T>
struct AffinePlane {
  LorentzVec<T> u;
  T c{};

  /// Causal type of V = u^perp: space-like for time-like u and so on.
  CausalType parallel_type() const;
  bool meets_hyperboloid() const;
  bool through_origin() const { return c == T(0); }
};

using QPlane = AffinePlane<Rational>;
using DPlane = AffinePlane<double>;

enum class Side { geq, leq, both };

template <class T>
struct HalfSpace {
  AffinePlane<T> plane;
  Side side = Side::geq;
  bool contains(const LorentzVec<T>& x) const;
};

/// The side of a plane meeting H^n whose trace on H^n is convex; it is the
/// side containing 0. Planes through 0 report Side::both.
template <class T>
HalfSpace<T> convex_side(const AffinePlane<T>& plane);

enum class SphereKind { metric, horosphere, equidistant, totally_geodesic };
std::string to_string(SphereKind k);

struct Circumsphere {
  SphereKind kind = SphereKind::metric;
  /// The plane through the points, Lorentz normal first-nonzero-positive.
  QPlane plane;
  DPlane dplane;
  /// metric: center and radius.
  DVec center;
  double radius = 0.0;
  /// horosphere: u in the light cone with the sphere = {x o u = -1}.
  QVec ideal;
  DVec dideal;
  /// equidistant: distance to the core plane V = axis^perp and the sign of
  /// x o axis on the sphere.
  double distance = 0.0;
  DVec axis;
  int component = 0;
  /// Set for circumspheres of lower-dimensional cells, which are not unique.
  bool non_unique = false;
};

/// Hypersphere through points spanning an n-plane of R^{n+1}. Throws if the
/// points span less or the plane misses H^n.
Circumsphere classify_hypersphere(const std::vector<QVec>& points);
Circumsphere classify_hypersphere(const std::vector<DVec>& points, double eps = kClassifyEps);
/// Classification of a known plane (used for support planes of lower cells).
Circumsphere classify_plane(const QPlane& plane);
Circumsphere classify_plane(const DPlane& plane, double eps = kClassifyEps);

/// A plane through 0 strictly separating x0 from the hull of C, with
/// u o x0 > 0 and u o y < 0 for y in C.
DPlane separating_plane(const std::vector<HPoint>& c, const HPoint& x0);

/// F(v) = x0 + v + (k + v o v)/2 u with k = 1 + x0 o x0.
template <class T>
LorentzVec<T> horosphere_chart(const LorentzVec<T>& x0, const LorentzVec<T>& u, const LorentzVec<T>& v);

/// Signed distance ln(-1/k) from {x o u = -1} to {x o u = k}.
double horosphere_level_shift(double k);
double horosphere_level_shift(const Rational& k);

template <class T>
struct HoroballIntersection {
  /// -1/2 + 1/(u o u').
  T r0{};
  bool empty = true;
  /// Point of the first horosphere closest to the second; exact for rationals.
  LorentzVec<T> center;
  /// arccosh(-r0), meaningful when !empty.
  double radius = 0.0;
};

template <class T>
HoroballIntersection<T> horoball_intersection(const LorentzVec<T>& u, const LorentzVec<T>& u2);

}  // namespace hypdel

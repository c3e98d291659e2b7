#include "hypdel/models.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

namespace hypdel {

namespace {

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

double lorentz_gap(const DVec& v) { return std::abs(minkowski(v, v) + 1.0); }

template <class T>
T squared_norm(const std::vector<T>& p) {
  T s(0);
  for (const auto& x : p) s += x * x;
  return s;
}

}  // namespace

HPoint HPoint::from_exact(QVec v) {
  if (v.size() < 2) throw GeometryError("hyperboloid point needs at least two coordinates");
  if (minkowski(v, v) != -1 || sgn(v[0]) <= 0) throw GeometryError("point is not on the hyperboloid sheet");
  HPoint p;
  for (std::size_t i = 0; i < v.size(); ++i) v[i].canonicalize();
  p.d_ = to_double(v);
  p.q_ = std::move(v);
  p.exact_ = true;
  return p;
}

HPoint HPoint::from_float(const DVec& v) {
  if (v.size() < 2) throw GeometryError("hyperboloid point needs at least two coordinates");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) throw GeometryError("non-finite coordinate");
  if (!(v[0] > 0.0) || lorentz_gap(v) > 1e-9 * std::max(1.0, dot(v, v)))
    throw GeometryError("point is not on the hyperboloid sheet");
  HPoint p;
  // Points already on the sheet up to roundoff are kept bit for bit, so
  // writing and re-reading a float point set is the identity.
  double n2 = -minkowski(v, v);
  p.d_ = std::abs(n2 - 1.0) <= 8 * DBL_EPSILON * dot(v, v) ? v : v * (1.0 / std::sqrt(n2));
  p.q_ = exact_from_double(p.d_);
  p.exact_ = false;
  return p;
}

HPoint HPoint::restore(QVec v, Mode mode) {
  if (mode == Mode::exact) return from_exact(std::move(v));
  if (v.size() < 2 || sgn(v[0]) <= 0) throw GeometryError("point is not on the hyperboloid sheet");
  HPoint p;
  p.d_ = to_double(v);
  if (lorentz_gap(p.d_) > 1e-9 * std::max(1.0, dot(p.d_, p.d_)))
    throw GeometryError("point is not on the hyperboloid sheet");
  p.q_ = std::move(v);
  p.exact_ = false;
  return p;
}

std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

std::string to_string(Model m) {
  switch (m) {
    case Model::hyperboloid: return "hyperboloid";
    case Model::poincare_ball: return "poincare";
    case Model::klein_ball: return "klein";
    case Model::upper_half_space: return "halfplane";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  if (name == "hyperboloid") return Model::hyperboloid;
  if (name == "poincare" || name == "poincare_ball") return Model::poincare_ball;
  if (name == "klein" || name == "klein_ball") return Model::klein_ball;
  if (name == "halfplane" || name == "upper_half" || name == "upper_half_space") return Model::upper_half_space;
  throw ParseError("unknown model '" + name + "'");
}

namespace {

QVec poincare_lift(const std::vector<Rational>& p) {
  Rational r2 = squared_norm(p);
  if (r2 >= 1) throw GeometryError("Poincare point outside the unit ball");
  Rational s = 1 / (1 - r2);
  QVec x(p.size() + 1);
  x[0] = (1 + r2) * s;
  for (std::size_t i = 0; i < p.size(); ++i) x[i + 1] = 2 * p[i] * s;
  return x;
}

DVec poincare_lift(const std::vector<double>& p) {
  double r2 = squared_norm(p);
  if (r2 >= 1.0) throw GeometryError("Poincare point outside the unit ball");
  double s = 1.0 / (1.0 - r2);
  DVec x(p.size() + 1);
  x[0] = (1.0 + r2) * s;
  for (std::size_t i = 0; i < p.size(); ++i) x[i + 1] = 2.0 * p[i] * s;
  return x;
}

template <class T>
LorentzVec<T> upper_half_lift(const std::vector<T>& z) {
  if (z.empty()) throw GeometryError("upper half-space point needs coordinates");
  const T& y = z.back();
  if (!(y > T(0))) throw GeometryError("upper half-space point needs positive height");
  T r2 = squared_norm(z);
  LorentzVec<T> x(z.size() + 1);
  x[0] = (r2 + 1) / (2 * y);
  x[1] = (r2 - 1) / (2 * y);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) x[i + 2] = z[i] / y;
  return x;
}

}  // namespace

HPoint lift(const ModelPoint& p, Mode mode) {
  if (p.coords.empty()) throw GeometryError("point has no coordinates");
  if (mode == Mode::exact) {
    switch (p.model) {
      case Model::hyperboloid: return HPoint::from_exact(QVec(p.coords));
      case Model::poincare_ball: return HPoint::from_exact(poincare_lift(p.coords));
      case Model::upper_half_space: return HPoint::from_exact(upper_half_lift(p.coords));
      case Model::klein_ball: {
        Rational r2 = squared_norm(p.coords);
        if (r2 >= 1) throw GeometryError("Klein point outside the unit ball");
        Rational root;
        if (!rational_sqrt(1 - r2, root))
          throw GeometryError("Klein point has an irrational hyperboloid lift; use float mode");
        QVec x(p.coords.size() + 1);
        x[0] = 1 / root;
        for (std::size_t i = 0; i < p.coords.size(); ++i) x[i + 1] = p.coords[i] / root;
        return HPoint::from_exact(std::move(x));
      }
    }
  }
  std::vector<double> c(p.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.coords[i]);
  switch (p.model) {
    case Model::hyperboloid: return HPoint::from_float(DVec(c));
    case Model::poincare_ball: return HPoint::from_float(poincare_lift(c));
    case Model::upper_half_space: return HPoint::from_float(upper_half_lift(c));
    case Model::klein_ball: {
      double r2 = squared_norm(c);
      if (r2 >= 1.0) throw GeometryError("Klein point outside the unit ball");
      double s = 1.0 / std::sqrt(1.0 - r2);
      DVec x(c.size() + 1);
      x[0] = s;
      for (std::size_t i = 0; i < c.size(); ++i) x[i + 1] = c[i] * s;
      return HPoint::from_float(x);
    }
  }
  throw GeometryError("unknown model");
}

namespace {

template <class T>
std::vector<T> poincare_of(const LorentzVec<T>& x) {
  std::vector<T> p(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) p[i - 1] = x[i] / (x[0] + 1);
  return p;
}

template <class T>
std::vector<T> klein_of(const LorentzVec<T>& x) {
  std::vector<T> p(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) p[i - 1] = x[i] / x[0];
  return p;
}

template <class T>
std::vector<T> upper_half_of(const LorentzVec<T>& x) {
  T y = T(1) / (x[0] - x[1]);
  std::vector<T> z(x.size() - 1);
  for (std::size_t i = 2; i < x.size(); ++i) z[i - 2] = x[i] * y;
  z.back() = y;
  return z;
}

}  // namespace

std::vector<Rational> to_poincare(const QVec& x) { return poincare_of(x); }
std::vector<double> to_poincare(const DVec& x) { return poincare_of(x); }
std::vector<Rational> to_klein(const QVec& x) { return klein_of(x); }
std::vector<double> to_klein(const DVec& x) { return klein_of(x); }
std::vector<Rational> to_upper_half(const QVec& x) { return upper_half_of(x); }
std::vector<double> to_upper_half(const DVec& x) { return upper_half_of(x); }

HPoint project_to_hyperboloid(const DVec& x) {
  double n = minkowski(x, x);
  if (!(n < 0.0) || !(x[0] > 0.0) || classify_vector(x) != CausalType::time_like)
    throw GeometryError("projection needs a future time-like vector");
  return HPoint::from_float(x * (1.0 / std::sqrt(-n)));
}

HPoint project_to_hyperboloid(const QVec& x) {
  Rational n = minkowski(x, x);
  if (sgn(n) >= 0 || sgn(x[0]) <= 0) throw GeometryError("projection needs a future time-like vector");
  Rational root;
  if (rational_sqrt(-n, root)) return HPoint::from_exact(x * Rational(1 / root));
  return project_to_hyperboloid(to_double(x));
}

double dist(const HPoint& x, const HPoint& y) {
  // 2 asinh(|x - y|/2) with |.| the Lorentz length; better conditioned than
  // arccosh(-x o y) for nearby points.
  double chord2;
  if (x.exact() && y.exact()) {
    QVec diff = x.q() - y.q();
    chord2 = minkowski(diff, diff).get_d();
  } else {
    DVec diff = x.d() - y.d();
    chord2 = minkowski(diff, diff);
  }
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, chord2)) / 2.0);
}

HPoint geodesic_point(const HPoint& x, const HPoint& y, double t) {
  if (x == y) throw GeometryError("geodesic direction undefined for equal points");
  const DVec& a = x.d();
  const DVec& b = y.d();
  double xy = minkowski(a, b);
  DVec n = b + xy * a;
  double nn = minkowski(n, n);
  if (!(nn > 0.0)) throw GeometryError("points too close to define a direction");
  n *= 1.0 / std::sqrt(nn);
  return HPoint::from_float(std::cosh(t) * a + std::sinh(t) * n);
}

HPoint horoball_ray(const HPoint& x, const DVec& u, double t) {
  if (classify_vector(u, 1e-9) != CausalType::light_like || !(u[0] > 0.0))
    throw GeometryError("horoball ray needs a future light-like direction");
  double pairing = minkowski(x.d(), u);
  if (std::abs(pairing + 1.0) > 1e-9 * std::max(1.0, std::sqrt(dot(u, u) * dot(x.d(), x.d()))))
    throw GeometryError("horoball ray needs x o u = -1");
  return HPoint::from_float(std::exp(-t) * x.d() + std::sinh(t) * u);
}

template <class T>
CausalType AffinePlane<T>::parallel_type() const {
  switch (classify_vector(u)) {
    case CausalType::time_like: return CausalType::space_like;
    case CausalType::light_like: return CausalType::light_like;
    case CausalType::space_like: return CausalType::time_like;
    case CausalType::zero: break;
  }
  throw GeometryError("plane normal is zero");
}

template <class T>
bool AffinePlane<T>::meets_hyperboloid() const {
  if (u.is_zero()) return false;
  const CausalType ct = classify_vector(u);
  if (ct == CausalType::space_like) return true;
  // Future-orient u; then x o u ranges over (-inf, -sqrt(-u o u)] on H^n.
  const bool flip = u[0] < T(0);
  const T k = flip ? T(-c) : c;
  if (ct == CausalType::light_like) return k < T(0);
  return k < T(0) && k * k >= -minkowski(u, u);
}

template struct AffinePlane<Rational>;
template struct AffinePlane<double>;

template <class T>
bool HalfSpace<T>::contains(const LorentzVec<T>& x) const {
  T v = minkowski(x, plane.u);
  switch (side) {
    case Side::geq: return v >= plane.c;
    case Side::leq: return v <= plane.c;
    case Side::both: return true;
  }
  return false;
}

template struct HalfSpace<Rational>;
template struct HalfSpace<double>;

template <class T>
HalfSpace<T> convex_side(const AffinePlane<T>& plane) {
  if (!plane.meets_hyperboloid()) throw GeometryError("plane misses the hyperboloid");
  HalfSpace<T> h{plane, Side::both};
  if (plane.c < T(0)) h.side = Side::geq;
  if (plane.c > T(0)) h.side = Side::leq;
  return h;
}

template HalfSpace<Rational> convex_side(const QPlane&);
template HalfSpace<double> convex_side(const DPlane&);

std::string to_string(SphereKind k) {
  switch (k) {
    case SphereKind::metric: return "metric";
    case SphereKind::horosphere: return "horosphere";
    case SphereKind::equidistant: return "equidistant";
    case SphereKind::totally_geodesic: return "totally_geodesic";
  }
  return "unknown";
}

namespace {

// Shared by both scalar types once the causal type of u has been decided.
template <class T>
Circumsphere classify_with(const AffinePlane<T>& plane, CausalType ct, bool through_origin) {
  Circumsphere s;
  if constexpr (std::is_same_v<T, Rational>) {
    s.plane = plane;
    s.dplane = DPlane{to_double(plane.u), plane.c.get_d()};
  } else {
    s.dplane = plane;
    s.plane = QPlane{exact_from_double(plane.u), exact_from_double(plane.c)};
  }
  const DVec du = s.dplane.u;
  if (ct == CausalType::zero) throw GeometryError("plane normal is zero");
  if (through_origin) {
    if (ct != CausalType::space_like) throw GeometryError("plane misses the hyperboloid");
    s.kind = SphereKind::totally_geodesic;
    s.axis = du * (1.0 / std::sqrt(minkowski(du, du)));
    return s;
  }
  const bool flip = plane.u[0] < T(0);
  const T k = flip ? T(-plane.c) : plane.c;
  const LorentzVec<T> w = flip ? LorentzVec<T>(-plane.u) : plane.u;
  const T ww = minkowski(w, w);
  switch (ct) {
    case CausalType::time_like: {
      if (!(k < T(0)) || k * k < -ww) throw GeometryError("plane misses the hyperboloid");
      const double root = std::sqrt(-to_double(ww));
      s.kind = SphereKind::metric;
      s.center = to_double(w) * (1.0 / root);
      // cosh r = -k/sqrt(-w o w); evaluate the square exactly when possible.
      const double cosh2 = to_double(T(k * k / -ww));
      s.radius = std::acosh(std::sqrt(std::max(1.0, cosh2)));
      return s;
    }
    case CausalType::light_like: {
      if (!(k < T(0))) throw GeometryError("plane misses the hyperboloid");
      const LorentzVec<T> ideal = w * T(T(-1) / k);
      if constexpr (std::is_same_v<T, Rational>) {
        s.ideal = ideal;
        s.dideal = to_double(ideal);
      } else {
        s.dideal = ideal;
        s.ideal = exact_from_double(ideal);
      }
      s.kind = SphereKind::horosphere;
      return s;
    }
    case CausalType::space_like: {
      s.kind = SphereKind::equidistant;
      const double uu = to_double(minkowski(plane.u, plane.u));
      s.distance = std::acosh(std::sqrt(1.0 + to_double(T(plane.c * plane.c)) / uu));
      s.axis = du * (1.0 / std::sqrt(uu));
      s.component = sign(plane.c) ;
      return s;
    }
    case CausalType::zero: break;
  }
  throw GeometryError("plane normal is zero");
}

}  // namespace

Circumsphere classify_plane(const QPlane& plane) {
  return classify_with(plane, classify_vector(plane.u), sgn(plane.c) == 0);
}

Circumsphere classify_plane(const DPlane& plane, double eps) {
  const double scale = std::sqrt(dot(plane.u, plane.u));
  return classify_with(plane, classify_vector(plane.u, eps), std::abs(plane.c) <= eps * scale);
}

Circumsphere classify_hypersphere(const std::vector<QVec>& points) {
  if (points.empty()) throw GeometryError("no points");
  const std::size_t n1 = points.front().size();
  Matrix<Rational> m(points.size() - 1, n1);
  for (std::size_t r = 1; r < points.size(); ++r)
    for (std::size_t c = 0; c < n1; ++c) m(r - 1, c) = points[r][c] - points[0][c];
  auto kernel = nullspace(m);
  if (kernel.size() != 1) throw GeometryError("points do not span a hyperplane");
  QVec eta(primitive_direction(kernel.front()));
  auto first = std::find_if(eta.coords().begin(), eta.coords().end(), [](const Rational& x) { return sgn(x) != 0; });
  if (*first < 0) eta = -eta;
  // eta . x = c  <=>  bar(eta) o x = -c.
  const Rational c = dot(eta, points.front());
  return classify_plane(QPlane{bar(eta), -c});
}

Circumsphere classify_hypersphere(const std::vector<DVec>& points, double eps) {
  if (points.empty()) throw GeometryError("no points");
  const std::size_t n1 = points.front().size();
  Matrix<double> m(points.size() - 1, n1);
  for (std::size_t r = 1; r < points.size(); ++r)
    for (std::size_t c = 0; c < n1; ++c) m(r - 1, c) = points[r][c] - points[0][c];
  auto kernel = nullspace(m);
  if (kernel.size() != 1) throw GeometryError("points do not span a hyperplane");
  DVec eta(kernel.front());
  eta *= 1.0 / std::sqrt(dot(eta, eta));
  auto first = std::find_if(eta.coords().begin(), eta.coords().end(), [](double x) { return x != 0.0; });
  if (*first < 0) eta = -eta;
  double c = 0.0;
  for (const auto& p : points) c += dot(eta, p);
  c /= static_cast<double>(points.size());
  return classify_plane(DPlane{bar(eta), -c}, eps);
}

namespace {

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& w) {
  std::vector<double> s = w;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cum += s[i];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0.0) theta = t;
  }
  for (double& x : w) x = std::max(0.0, x - theta);
}

}  // namespace

DPlane separating_plane(const std::vector<HPoint>& c, const HPoint& x0) {
  if (c.empty()) throw GeometryError("empty point set");
  const std::size_t m = c.size();
  const DVec& x = x0.d();
  auto combo = [&](const std::vector<double>& w) {
    DVec p(x.size());
    for (std::size_t i = 0; i < m; ++i) p += w[i] * c[i].d();
    return p;
  };
  // cosh of the distance from x0 to r(p).
  auto objective = [&](const std::vector<double>& w) {
    DVec p = combo(w);
    return -minkowski(x, p) / std::sqrt(-minkowski(p, p));
  };
  auto gradient = [&](const std::vector<double>& w) {
    DVec p = combo(w);
    double a = minkowski(x, p), b = -minkowski(p, p);
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i) {
      double da = minkowski(x, c[i].d()), db = -2.0 * minkowski(p, c[i].d());
      g[i] = -da / std::sqrt(b) + 0.5 * a * db / (b * std::sqrt(b));
    }
    return g;
  };
  std::vector<std::vector<double>> starts;
  starts.emplace_back(m, 1.0 / static_cast<double>(m));
  for (std::size_t i = 0; i < m && m > 1; ++i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    starts.push_back(std::move(e));
  }
  std::vector<double> best;
  double best_f = INFINITY;
  for (auto w : starts) {
    double f = objective(w), step = 1.0;
    for (int it = 0; it < 5000; ++it) {
      auto g = gradient(w);
      bool moved = false;
      while (step > 1e-18) {
        std::vector<double> trial(m);
        for (std::size_t i = 0; i < m; ++i) trial[i] = w[i] - step * g[i];
        project_simplex(trial);
        double ft = objective(trial);
        if (ft < f) {
          moved = f - ft > 1e-12 * std::max(1.0, f);
          w = std::move(trial);
          f = ft;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (f < best_f) {
      best_f = f;
      best = w;
    }
  }
  DVec p = combo(best);
  DVec near = p * (1.0 / std::sqrt(-minkowski(p, p)));
  DVec u = x + minkowski(near, x) * near;
  const double scale = std::sqrt(dot(x, x));
  if (std::sqrt(std::max(0.0, minkowski(u, u))) <= 1e-9 * scale || !(minkowski(u, x) > 0.0))
    throw GeometryError("point lies inside or on the hull");
  const double tol = 1e-9 * std::sqrt(dot(u, u));
  for (const auto& y : c) {
    if (minkowski(u, y.d()) > tol * std::sqrt(dot(y.d(), y.d())))
      throw GeometryError("separation failed; point lies inside or on the hull");
  }
  return DPlane{u, 0.0};
}

template <class T>
LorentzVec<T> horosphere_chart(const LorentzVec<T>& x0, const LorentzVec<T>& u, const LorentzVec<T>& v) {
  auto bad = [](const T& value, const T& target) {
    if constexpr (std::is_same_v<T, Rational>) {
      return value != target;
    } else {
      return std::abs(value - target) > 1e-9 * std::max(1.0, std::abs(target));
    }
  };
  if (bad(minkowski(u, u), T(0)) || !(u[0] > T(0))) throw GeometryError("chart needs a future light-like u");
  if (bad(minkowski(x0, u), T(-1))) throw GeometryError("chart needs x0 o u = -1");
  if (bad(minkowski(v, u), T(0)) || bad(minkowski(v, x0), T(0)))
    throw GeometryError("chart offset must be orthogonal to x0 and u");
  const T k = T(1) + minkowski(x0, x0);
  const T half = T(1) / T(2);
  return x0 + v + (half * (k + minkowski(v, v))) * u;
}

template QVec horosphere_chart(const QVec&, const QVec&, const QVec&);
template DVec horosphere_chart(const DVec&, const DVec&, const DVec&);

double horosphere_level_shift(double k) {
  if (!(k < 0.0)) throw GeometryError("horosphere level must be negative");
  return -std::log(-k);
}

double horosphere_level_shift(const Rational& k) {
  if (sgn(k) >= 0) throw GeometryError("horosphere level must be negative");
  // ln(-1/k) = ln(den) - ln(-num), kept accurate for huge numerators.
  long e_num = 0, e_den = 0;
  double num = mpz_get_d_2exp(&e_num, mpz_class(-k.get_num()).get_mpz_t());
  double den = mpz_get_d_2exp(&e_den, k.get_den_mpz_t());
  return std::log(den / num) + static_cast<double>(e_den - e_num) * std::log(2.0);
}

template <class T>
HoroballIntersection<T> horoball_intersection(const LorentzVec<T>& u, const LorentzVec<T>& u2) {
  auto light = [](const LorentzVec<T>& v) {
    if constexpr (std::is_same_v<T, Rational>) {
      return classify_vector(v) == CausalType::light_like;
    } else {
      return classify_vector(v, 1e-9) == CausalType::light_like;
    }
  };
  if (!light(u) || !light(u2) || !(u[0] > T(0)) || !(u2[0] > T(0)))
    throw GeometryError("horoball centers must be future light-like");
  const T p = minkowski(u, u2);
  bool proportional;
  if constexpr (std::is_same_v<T, Rational>) {
    proportional = sgn(p) == 0;
  } else {
    proportional = std::abs(p) <= 1e-12 * std::sqrt(dot(u, u) * dot(u2, u2));
  }
  if (proportional) throw GeometryError("horoball centers are proportional");
  HoroballIntersection<T> out;
  out.r0 = T(-1) / T(2) + T(1) / p;
  out.empty = out.r0 > T(-1);
  out.center = (T(1) / T(2)) * u + (T(-1) / p) * u2;
  if (!out.empty) out.radius = std::acosh(std::max(1.0, -to_double(out.r0)));
  return out;
}

template HoroballIntersection<Rational> horoball_intersection(const QVec&, const QVec&);
template HoroballIntersection<double> horoball_intersection(const DVec&, const DVec&);

}  // namespace hypdel

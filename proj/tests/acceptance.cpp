// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status 1 if any criterion fails.

#include "hypdel/orbit.hpp"
#include "hypdel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hypdel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> notes;
};

const std::vector<std::vector<HPoint>>& corpus() {
  static const auto c = random_corpus(20240601, 500, 4, 12);
  return c;
}

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.6g") {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt(f, x);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ", ") + std::to_string(x);
  return s;
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  int mismatches = 0;
  Outcome o;
  for (const auto& sites : corpus()) {
    OracleReport r = compare_cells("brute-force", sites, brute_force_delaunay(sites),
                                   cell_set(delaunay_tessellation(sites)));
    if (!r.match) {
      ++mismatches;
      o.notes.push_back("mismatch on instance " + r.instance_hash);
    }
  }
  double s = seconds_since(t0);
  o.pass = mismatches == 0 && s < 60;
  o.summary = std::to_string(mismatches) + " mismatches in " + std::to_string(corpus().size()) + " instances, " +
              fmt("%.1f", s) + " s";
  return o;
}

// y, z = (3/2, a, +-b) on the rational circle a^2 + b^2 = 5/4 through
// (1/2, -1): the line of slope t meets it again at s = (2t - 1)/(1 + t^2).
Outcome three_regimes() {
  struct Row {
    Rational a, b, yz;
    SphereKind kind;
  };
  std::vector<Row> rows;
  for (int k = -64; k <= 64; ++k) {
    Rational t = ratio(k, 16);
    Rational s = (2 * t - 1) / (1 + t * t);
    Rational a = Rational(1, 2) + s, b = -1 + t * s;
    if (sgn(a) < 0 || sgn(b) == 0) continue;
    auto sites = three_point_config(a, b);
    Tessellation tess = delaunay_tessellation(sites);
    auto tri = tess.cells_of_dim(2);
    if (tri.size() != 1) return {false, "no single 2-cell for a = " + to_string(a), {}};
    rows.push_back({a, b, -minkowski(sites[1].q(), sites[2].q()), cell_circumsphere(tess, tri.front()).kind});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.yz < y.yz; });
  // With d(x, y) = d(x, z) fixed, -y o z = 7/2 - 2a^2 grows with d(y, z).
  int wrong = 0, metric = 0, horo = 0, equi = 0;
  for (const Row& r : rows) {
    int c = cmp(r.yz, Rational(3));
    SphereKind want = c < 0 ? SphereKind::metric : (c == 0 ? SphereKind::horosphere : SphereKind::equidistant);
    wrong += r.kind != want;
    metric += r.kind == SphereKind::metric;
    horo += r.kind == SphereKind::horosphere;
    equi += r.kind == SphereKind::equidistant;
  }
  bool ordered = true;
  for (std::size_t i = 1; i < rows.size(); ++i) ordered = ordered && static_cast<int>(rows[i - 1].kind) <= static_cast<int>(rows[i].kind);

  Tessellation mid = delaunay_tessellation(three_point_config("middle"));
  Circumsphere hs = cell_circumsphere(mid, mid.cells_of_dim(2).front());
  bool fixture = mid.mode == Mode::exact && hs.kind == SphereKind::horosphere && hs.ideal == (QVec{1, 1, 0});

  Outcome o;
  o.pass = wrong == 0 && ordered && horo >= 1 && metric > 0 && equi > 0 && fixture;
  o.summary = std::to_string(rows.size()) + " rational configurations: " + std::to_string(metric) + " metric, " +
              std::to_string(horo) + " horosphere, " + std::to_string(equi) + " equidistant, " +
              std::to_string(wrong) + " misclassified; fixture {(1,0,0),(3/2,1/2,+-1)} " +
              (fixture ? "horosphere with ideal point (1,1,0)" : "wrong");
  return o;
}

Outcome duality() {
  Outcome o;
  bool ok = true;
  Tessellation left = delaunay_tessellation(three_point_config("left"));
  CellSet all = cell_set(left), dual_left = cell_set(left, geometric_dual(left).cells);
  ok = ok && dual_left == all && all.size() == 7;
  o.notes.push_back("left: " + std::to_string(dual_left.size()) + " of " + std::to_string(all.size()) + " cells");
  CellSet want{{0}, {0, 1}, {0, 2}, {1}, {2}};
  for (const char* name : {"middle", "right"}) {
    Tessellation t = delaunay_tessellation(three_point_config(name));
    CellSet d = cell_set(t, geometric_dual(t).cells);
    ok = ok && d == want;
    o.notes.push_back(std::string(name) + ": " + std::to_string(d.size()) + " cells, 2-cell " +
                      (std::count(d.begin(), d.end(), std::vector<int>{0, 1, 2}) ? "kept" : "excluded"));
  }
  o.pass = ok;
  o.summary = ok ? "left keeps all 7 cells; middle and right keep {x, y, z, xy, xz}" : "combinatorics differ";
  return o;
}

Outcome poincare_euclidean() {
  Outcome o;
  int mismatches = 0, metric_mismatch = 0;
  for (const auto& sites : corpus()) {
    Tessellation t = delaunay_tessellation(sites);
    GeometricDual d = geometric_dual(t);
    OracleReport r = compare_cells("poincare-euclidean", sites, poincare_euclidean_oracle(sites), cell_set(t, d.cells));
    if (!r.match) {
      ++mismatches;
      o.notes.push_back("mismatch on instance " + r.instance_hash);
    }
    for (int id : t.cells_of_dim(2)) {
      bool in = std::binary_search(d.cells.begin(), d.cells.end(), id);
      metric_mismatch += in != (t.cells[id].sphere.kind == SphereKind::metric);
    }
  }
  o.pass = mismatches == 0 && metric_mismatch == 0;
  o.summary = std::to_string(mismatches) + " mismatches in " + std::to_string(corpus().size()) + " instances, " +
              std::to_string(metric_mismatch) + " top cells where dual != metric circumsphere";
  return o;
}

Outcome contravariance() {
  Outcome o;
  long violations = 0, pairs = 0, bad_dims = 0;
  for (const auto& sites : corpus()) {
    Tessellation t = delaunay_tessellation(sites);
    VoronoiDiagram v = voronoi_diagram(t);
    ContravarianceReport r = check_contravariance(t, v);
    violations += static_cast<long>(r.violations.size());
    for (const auto& s : r.violations) o.notes.push_back(instance_hash(sites) + ": " + s);
    for (const auto& p : geometric_dual(t, v).pairs) {
      ++pairs;
      bad_dims += v.cells[p.voronoi_id].dim + t.cells[p.delaunay_cell_id].dim != t.n;
    }
  }
  o.pass = violations == 0 && bad_dims == 0;
  o.summary = std::to_string(violations) + " violations; " + std::to_string(bad_dims) + " of " +
              std::to_string(pairs) + " dual pairs with dim V + dim C != 2";
  return o;
}

Outcome membership() {
  Outcome o;
  long samples = 0, mismatches = 0;
  std::uint64_t seed = 1;
  for (const auto& sites : corpus()) {
    Tessellation t = delaunay_tessellation(sites);
    OracleReport r = voronoi_membership_oracle(t, voronoi_diagram(t), 10000, seed++);
    samples += r.samples;
    mismatches += r.mismatches;
    if (r.mismatches) o.notes.push_back(std::to_string(r.mismatches) + " mismatches on " + r.instance_hash);
    if (r.samples < 10000) o.notes.push_back("only " + std::to_string(r.samples) + " samples on " + r.instance_hash);
  }
  o.pass = mismatches == 0 && o.notes.empty();
  o.summary = std::to_string(mismatches) + " mismatches in " + std::to_string(samples) + " samples over " +
              std::to_string(corpus().size()) + " instances";
  return o;
}

// Minimum over the horocycle {x o (1,1,0) = k} of the distance to (1,0,0),
// which lies on level -1; golden-section search on the x2 coordinate.
double level_distance(double k) {
  const double m = -k;
  HPoint x0 = HPoint::from_exact(QVec{1, 0, 0});
  auto f = [&](double s) {
    double p = (1 + s * s) / m;
    return dist(x0, HPoint::from_float(DVec{(m + p) / 2, (p - m) / 2, s}));
  };
  double lo = -8, hi = 8;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 200; ++i) {
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b))
      hi = b;
    else
      lo = a;
  }
  return f((lo + hi) / 2);
}

// Rational point of the unit circle.
std::pair<Rational, Rational> circle_point(const Rational& t) {
  Rational d = 1 + t * t;
  return {(1 - t * t) / d, 2 * t / d};
}

Outcome horoballs() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uk(-1, 0);
  double worst = 0;
  int checked = 0;
  while (checked < 100) {
    double k = uk(rng);
    if (k == 0 || k == -1) continue;
    double want = level_distance(k);
    worst = std::max({worst, std::abs(horosphere_level_shift(k) - want), std::abs(std::log(-1 / k) - want)});
    ++checked;
  }
  int tangent_ok = 0, tangent = 0;
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  for (int i = 0; i < 100; ++i) {
    auto [c1, s1] = circle_point(ratio(num(rng), den(rng)));
    auto [c2, s2] = circle_point(ratio(num(rng), den(rng)));
    Rational lam = ratio(den(rng), den(rng));
    QVec u{lam, lam * c1, lam * s1}, w{1, c2, s2};
    Rational uw = minkowski(u, w);
    if (sgn(uw) == 0) continue;
    w = (Rational(-2) / uw) * w;
    ++tangent;
    auto h = horoball_intersection(u, w);
    bool ok = minkowski(u, w) == -2 && h.r0 == -1 && !h.empty && h.radius == 0.0 &&
              minkowski(h.center, u) == -1 && minkowski(h.center, w) == -1 && minkowski(h.center, h.center) == -1;
    tangent_ok += ok;
  }
  o.pass = worst <= 1e-10 && tangent_ok == tangent && tangent > 50;
  o.summary = "max |shift - distance| = " + fmt("%.2e", worst) + " over 100 levels k in (-1, 0); " +
              std::to_string(tangent_ok) + " of " + std::to_string(tangent) + " tangent pairs with radius 0 exactly";
  return o;
}

Outcome chord_law() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 15);
  auto r = [&] { return ratio(num(rng), den(rng)); };
  int checks = 0, failures = 0;
  // Frames g(x0), g(u), g(e2) of the standard horocycle through (1,0,0).
  for (int i = 0; i < 40; ++i) {
    Rational a = r(), b = r();
    GroupElement g = sl2_to_so21(SL2{1, a, b, 1 + a * b}) * sl2_to_so21(SL2{1, r(), 0, 1});
    QVec x0 = g.apply(QVec{1, 0, 0}), u = g.apply(QVec{1, 1, 0}), e = g.apply(QVec{0, 0, 1});
    for (int j = 0; j < 10; ++j) {
      QVec v = r() * e, w = r() * e;
      QVec fv = horosphere_chart(x0, u, v), fw = horosphere_chart(x0, u, w);
      ++checks;
      failures += -minkowski(fv, fw) - 1 != minkowski(v - w, v - w) / 2 || minkowski(fv, u) != -1 ||
                  minkowski(fv, fv) != -1;
    }
  }
  QVec x0{1, 0, 0, 0}, u{1, 1, 0, 0};
  for (int j = 0; j < 100; ++j) {
    QVec v{0, 0, r(), r()}, w{0, 0, r(), r()};
    QVec fv = horosphere_chart(x0, u, v), fw = horosphere_chart(x0, u, w);
    ++checks;
    failures += -minkowski(fv, fw) - 1 != minkowski(v - w, v - w) / 2 || minkowski(fv, u) != -1;
  }
  o.pass = failures == 0;
  o.summary = std::to_string(failures) + " failures in " + std::to_string(checks) + " exact rational pairs (H^2 and H^3)";
  return o;
}

struct OrbitRun {
  OrbitSet orbit;
  Tessellation tess;
};

OrbitRun orbit_run(int L) {
  OrbitRun r{orbit_ball(punctured_torus_generators(), {HPoint::from_exact(QVec{1, 0, 0})}, L), {}};
  r.tess = delaunay_tessellation(r.orbit.points);
  return r;
}

Outcome invariance() {
  auto t0 = Clock::now();
  auto gens = punctured_torus_generators();
  const QVec cusp{1, -1, 0};
  Outcome o;
  std::vector<double> cusp_norms;
  std::vector<InvarianceReport> m1, m2;
  for (int L = 3; L <= 5; ++L) {
    OrbitRun run = orbit_run(L);
    m1.push_back(invariance_report(run.tess, run.orbit, gens, 1));
    m2.push_back(invariance_report(run.tess, run.orbit, gens, 2));
    CuspDiagnostic d = cusp_cell_diagnostic(run.tess, cusp);
    cusp_norms.push_back(d.closest < 0 ? NAN : std::abs(to_double(d.cells[d.closest].norm)));
    o.notes.push_back("L = " + std::to_string(L) + ": " + std::to_string(run.orbit.points.size()) +
                      " points; margin 1 orbit counts [" + join(m1.back().orbit_counts) + "], action failures " +
                      std::to_string(m1.back().action_failures) + " of " + std::to_string(m1.back().action_checks) +
                      ", time-like faces " + std::to_string(m1.back().time_like_faces) + "; margin 2 counts [" +
                      join(m2.back().orbit_counts) + "], action failures " + std::to_string(m2.back().action_failures) +
                      ", time-like faces " + std::to_string(m2.back().time_like_faces));
  }
  const InvarianceReport& at4 = m1[1];
  const InvarianceReport& at5 = m1[2];
  bool counts = counts_stabilized(at4, at5);
  bool action = at4.action_failures == 0;
  bool timelike = at4.time_like_faces == 0;
  TrendVerdict tr = trend(cusp_norms);
  double s = seconds_since(t0);
  o.notes.push_back("cusp-closest top cell |u o u| for L = 3, 4, 5: " + join(cusp_norms) +
                    " (the cell whose vertices lie on one horocycle of the cusp is horospherical, u o u = 0 exactly)");
  o.notes.push_back(std::string("with margin 2: counts L4 = L5 ") + (counts_stabilized(m2[1], m2[2]) ? "yes" : "no") +
                    ", action failures " + std::to_string(m2[1].action_failures) + ", time-like faces " +
                    std::to_string(m2[1].time_like_faces));
  for (std::size_t i = 0; i < std::min<std::size_t>(3, at4.failures.size()); ++i)
    o.notes.push_back("L = 4 action failure: " + at4.failures[i]);
  o.pass = counts && action && timelike && tr.strictly_decreasing && s < 300;
  o.summary = std::string("orbit counts L4 = L5: ") + (counts ? "yes" : "no") + "; action permutes interior cells: " +
              (action ? "yes" : "no") + "; time-like interior faces: " + std::to_string(at4.time_like_faces) +
              "; cusp |u o u| strictly decreasing: " + (tr.strictly_decreasing ? "yes" : "no") + "; " +
              fmt("%.1f", s) + " s";
  return o;
}

Outcome bad_example() {
  Outcome o;
  bool ok = true;
  for (int N = 8; N <= 16; ++N) {
    Tessellation t = delaunay_tessellation(bad_example_points(1.25, N));
    auto idx = bad_example_index;
    CellSet predicted;
    for (int n = 1; n < N; ++n)
      for (int sgn_ : {1, -1}) {
        std::vector<int> c{idx(0), idx(sgn_ * n), idx(sgn_ * (n + 1))};
        std::sort(c.begin(), c.end());
        predicted.push_back(c);
      }
    std::sort(predicted.begin(), predicted.end());
    CellSet top;
    for (const auto& c : t.cells)
      if (c.top) top.push_back(c.vertices);
    std::sort(top.begin(), top.end());
    CellSet missing, extra;
    std::set_difference(predicted.begin(), predicted.end(), top.begin(), top.end(), std::back_inserter(missing));
    std::set_difference(top.begin(), top.end(), predicted.begin(), predicted.end(), std::back_inserter(extra));
    // The fan around p_0 closes with one mirror-symmetric cell through p_0.
    auto mirror = [&](std::vector<int> c) {
      for (int& v : c) v = v == 0 ? 0 : (v % 2 ? v + 1 : v - 1);
      std::sort(c.begin(), c.end());
      return c;
    };
    bool extra_ok = extra.size() == 1 && extra.front().front() == idx(0) && mirror(extra.front()) == extra.front();

    // Lorentz norm of the support normal scaled to {x o u = -1}; positive
    // means the parallel subspace u^perp is time-like.
    std::vector<double> defect;
    for (int n = 1; n < N; ++n) {
      std::vector<int> c{idx(0), idx(n), idx(n + 1)};
      std::sort(c.begin(), c.end());
      int id = t.find(c);
      if (id < 0) break;
      const QPlane& p = t.cells[id].sphere.plane;
      defect.push_back(to_double(minkowski(p.u, p.u) / (p.c * p.c)));
    }
    bool monotone = static_cast<int>(defect.size()) == N - 1;
    for (std::size_t i = 1; i < defect.size(); ++i) monotone = monotone && defect[i] > defect[i - 1] - 1e-8;
    bool timelike = !defect.empty() && defect.back() > 1e-8;
    bool here = missing.empty() && extra_ok && monotone && timelike;
    ok = ok && here;
    if (N == 8 || N == 16 || !here)
      o.notes.push_back("N = " + std::to_string(N) + ": " + std::to_string(top.size()) + " top cells, " +
                        std::to_string(missing.size()) + " predicted missing, " + std::to_string(extra.size()) +
                        " others (the central cell p0 p1 p-1" + (extra_ok ? "" : " not") + " alone); u o u = " +
                        join(defect, "%.4f"));
  }
  o.pass = ok;
  o.summary = ok ? "N = 8..16: all triangles (p0, p_n, p_n+1) and mirrors present, one central extra cell, "
                   "normalized u o u increasing and positive (time-like limit)"
                 : "see notes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"oracle equivalence", oracle_equivalence}, {"three-regime classification", three_regimes},
      {"duality fixtures", duality},               {"dual vs Poincare-Euclidean oracle", poincare_euclidean},
      {"contravariance", contravariance},           {"Voronoi membership", membership},
      {"horoball formulas", horoballs},             {"horosphere chart chord law", chord_law},
      {"invariance at truncation scale", invariance}, {"bad-example fixture", bad_example},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.summary.c_str());
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}

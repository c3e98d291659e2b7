#include "cli.hpp"

#include "io.hpp"
#include "svg.hpp"

#include "hypdel/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

namespace hypdel::cli {

namespace {

struct Options {
  std::string in;
  std::string out;
  std::string svg;
  std::string model;
  std::string render_model = "poincare";
  bool exact = false;
  bool floating = false;
  double eps = 1e-9;
  std::uint64_t seed = 0;
  int max_word_length = -1;
  int margin = 1;
  std::string cusp;
  int count = 500;
  int samples = 1000;
  std::string fixture;
  std::string config = "middle";
  double r_inf = 1.25;
  int n = 8;
};

class MismatchFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    io::write_text(path, text);
}

Mode mode_override(const Options& o, Mode fallback) {
  if (o.exact) return Mode::exact;
  if (o.floating) return Mode::floating;
  return fallback;
}

DelaunayOptions delaunay_options(const Options& o) {
  DelaunayOptions d;
  d.seed = o.seed;
  d.eps = o.eps;
  return d;
}

io::Json input_json(const Options& o) {
  if (o.in.empty()) throw ParseError("--in is required");
  return io::read_json(o.in);
}

std::vector<HPoint> load_sites(const Options& o, const io::Json& j) {
  if (io::is_tessellation(j)) {
    io::TessellationFile f = io::tessellation_from_json(j);
    Mode m = mode_override(o, f.mode);
    if (m == f.mode) return io::sites_of(f);
    std::vector<HPoint> out;
    for (const QVec& s : f.sites) out.push_back(lift(ModelPoint{Model::hyperboloid, s.coords()}, m));
    return out;
  }
  io::Json doc = j;
  if (!o.model.empty() && doc.is_object() && !doc.contains("model")) doc["model"] = o.model;
  io::PointSetFile f = io::point_set_from_json(doc);
  f.mode = mode_override(o, f.mode);
  return io::lift_points(f);
}

std::string render(const io::TessellationFile& f, const Options& o) {
  return io::render_svg(f, parse_model(o.render_model));
}

int cmd_tessellate(const Options& o, const std::string& what, std::ostream& out) {
  io::Json j = input_json(o);
  std::vector<HPoint> sites = load_sites(o, j);
  Tessellation t = delaunay_tessellation(sites, delaunay_options(o));
  io::TessellationFile f;
  if (what == "delaunay") {
    f = io::tessellation_file(t);
  } else {
    VoronoiDiagram v = voronoi_diagram(t);
    if (what == "voronoi") {
      f = io::tessellation_file(t, &v);
    } else {
      GeometricDual d = geometric_dual(t, v);
      f = io::tessellation_file(t, nullptr, &d);
    }
  }
  f.provenance.command = what;
  f.provenance.seed = o.seed;
  if (!o.svg.empty()) {
    f.provenance.float_geometry = true;
    io::write_text(o.svg, render(f, o));
  }
  emit(o.out, io::dump(io::to_json(f)), out);
  return kOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  io::Json j = input_json(o);
  io::TessellationFile f;
  if (io::is_tessellation(j)) {
    f = io::tessellation_from_json(j);
  } else {
    std::vector<HPoint> sites = load_sites(o, j);
    // No sites: the bare boundary of the chart.
    if (!sites.empty()) f = io::tessellation_file(delaunay_tessellation(sites, delaunay_options(o)));
  }
  emit(o.out, render(f, o), out);
  return kOk;
}

io::Json cells_json(const CellSet& cs) {
  io::Json a = io::Json::array();
  for (const auto& c : cs) a.push_back(c);
  return a;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::vector<HPoint>> instances;
  std::optional<CellSet> stored;
  if (!o.in.empty()) {
    io::Json j = input_json(o);
    instances.push_back(load_sites(o, j));
    if (io::is_tessellation(j)) {
      CellSet cs;
      for (const auto& c : io::tessellation_from_json(j).cells) cs.push_back(c.vertices);
      std::sort(cs.begin(), cs.end());
      stored = cs;
    }
  } else {
    instances = random_corpus(o.seed, o.count);
  }

  int delaunay_bad = 0, delaunay_run = 0, dual_bad = 0, dual_run = 0, contra_bad = 0, memb_bad = 0,
      memb_samples = 0, stored_bad = 0;
  io::Json rows = io::Json::array();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& sites = instances[i];
    io::Json row;
    std::string hash = instance_hash(sites);
    row["instance"] = hash;
    row["sites"] = sites.size();
    Tessellation t = delaunay_tessellation(sites, delaunay_options(o));
    const bool exact = t.mode == Mode::exact;

    auto record = [&](const char* key, const OracleReport& r, int& bad) {
      io::Json e;
      e["match"] = r.match;
      if (!r.missing.empty()) e["missing"] = cells_json(r.missing);
      if (!r.extra.empty()) e["extra"] = cells_json(r.extra);
      row[key] = e;
      if (!r.match) {
        ++bad;
        err << "instance " << hash << ": " << key << " mismatch (" << r.missing.size() << " missing, "
            << r.extra.size() << " extra)\n";
      }
    };

    if (exact && sites.size() <= 12) {
      ++delaunay_run;
      record("delaunay", compare_cells("brute_force", sites, brute_force_delaunay(sites), cell_set(t)), delaunay_bad);
    }
    if (stored) {
      OracleReport r = compare_cells("stored", sites, *stored, cell_set(t));
      record("stored", r, stored_bad);
    }
    VoronoiDiagram v = voronoi_diagram(t);
    GeometricDual d = geometric_dual(t, v);
    if (exact && t.n == 2) {
      ++dual_run;
      record("dual", compare_cells("poincare_euclidean", sites, poincare_euclidean_oracle(sites), cell_set(t, d.cells)),
             dual_bad);
    }
    ContravarianceReport c = check_contravariance(t, v);
    row["contravariance"] = c.violations;
    contra_bad += static_cast<int>(c.violations.size());
    for (const auto& s : c.violations) err << "instance " << hash << ": " << s << "\n";
    if (o.samples > 0) {
      OracleReport m = voronoi_membership_oracle(t, v, o.samples, o.seed + i);
      row["membership"] = {{"samples", m.samples}, {"mismatches", m.mismatches}};
      memb_samples += m.samples;
      memb_bad += m.mismatches;
      if (m.mismatches) err << "instance " << hash << ": " << m.mismatches << " membership mismatches\n";
    }
    rows.push_back(row);
  }

  out << "instances " << instances.size() << "\n";
  out << "delaunay vs brute force: " << delaunay_bad << " mismatches in " << delaunay_run << " instances\n";
  out << "dual vs poincare-euclidean: " << dual_bad << " mismatches in " << dual_run << " instances\n";
  out << "contravariance: " << contra_bad << " violations\n";
  out << "voronoi membership: " << memb_bad << " mismatches in " << memb_samples << " samples\n";
  if (stored) out << "stored cells: " << stored_bad << " mismatches\n";

  const bool ok = delaunay_bad + dual_bad + contra_bad + memb_bad + stored_bad == 0;
  if (!o.out.empty()) {
    io::Json report;
    report["ok"] = ok;
    report["seed"] = o.seed;
    report["instances"] = rows;
    io::write_text(o.out, io::dump(report));
  }
  return ok ? kOk : kMismatch;
}

QVec parse_vector(const std::string& text) {
  QVec v;
  std::vector<Rational> cs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) cs.push_back(parse_rational(item));
  if (cs.empty()) throw ParseError("empty vector '" + text + "'");
  return QVec(cs);
}

int cmd_orbit(const Options& o, std::ostream& out) {
  io::GroupFile g = io::group_from_json(input_json(o));
  const int L = o.max_word_length >= 0 ? o.max_word_length : g.max_word_length;
  if (g.generators.empty()) throw ParseError("group file has no generators");
  if (g.bases.empty()) throw ParseError("group file has no base points");
  std::vector<GroupElement> gens = io::group_generators(g);
  OrbitSet orbit = orbit_ball(gens, io::group_bases(g, mode_override(o, Mode::exact)), L);
  Tessellation t = delaunay_tessellation(orbit.points, delaunay_options(o));
  InvarianceReport r = invariance_report(t, orbit, gens, o.margin);

  io::PointSetFile pts = io::point_set(orbit.points, t.mode);
  for (const OrbitPoint& p : orbit.provenance) {
    std::string label = p.word.empty() ? "e" : p.word;
    if (orbit.bases.size() > 1) label += "/b" + std::to_string(p.base);
    pts.labels.push_back(label);
  }
  pts.provenance.command = "orbit";
  pts.provenance.seed = o.seed;

  io::Json j;
  j["max_word_length"] = L;
  j["points"] = io::to_json(pts);
  io::Json rj;
  rj["margin"] = r.margin;
  rj["interior_cells"] = r.interior_cells.size();
  rj["orbit_counts"] = r.orbit_counts;
  rj["action_checks"] = r.action_checks;
  rj["action_failures"] = r.action_failures;
  rj["time_like_faces"] = r.time_like_faces;
  rj["degenerate"] = r.degenerate;
  if (!r.failures.empty()) rj["failures"] = r.failures;
  j["report"] = rj;
  if (!o.cusp.empty()) {
    CuspDiagnostic c = cusp_cell_diagnostic(t, parse_vector(o.cusp));
    io::Json cj;
    if (c.closest >= 0) {
      const CuspCell& cc = c.cells[c.closest];
      cj["cell"] = t.cells[cc.cell].vertices;
      cj["norm"] = to_string(cc.norm);
      cj["angle"] = cc.angle;
      cj["direction"] = c.direction.coords();
    }
    j["cusp"] = cj;
  }
  if (!o.svg.empty()) {
    io::TessellationFile f = io::tessellation_file(t);
    f.provenance.float_geometry = true;
    io::write_text(o.svg, render(f, o));
  }
  emit(o.out, io::dump(j), out);
  return kOk;
}

Model output_model(const Options& o, Model fallback) {
  if (o.model.empty()) return fallback;
  try {
    return parse_model(o.model);
  } catch (const GeometryError& e) {
    throw ParseError(e.what());
  }
}

int cmd_fixture(const Options& o, std::ostream& out) {
  if (o.fixture == "punctured-torus") {
    int L = o.max_word_length >= 0 ? o.max_word_length : 4;
    io::GroupFile g = io::group_file(punctured_torus_generators(), {HPoint::from_exact(QVec{1, 0, 0})}, L);
    emit(o.out, io::dump(io::to_json(g)), out);
    return kOk;
  }
  io::PointSetFile f;
  if (o.fixture == "bad-example") {
    if (o.n < 1) throw ParseError("--n must be positive");
    f = io::point_set(bad_example_points(o.r_inf, o.n), Mode::floating, output_model(o, Model::hyperboloid));
    f.labels.push_back("p0");
    for (int k = 1; k <= o.n; ++k) {
      f.labels.push_back("p" + std::to_string(k));
      f.labels.push_back("p-" + std::to_string(k));
    }
  } else if (o.fixture == "three-point") {
    f = io::point_set(three_point_config(o.config), Mode::exact, output_model(o, Model::hyperboloid));
    f.labels = {"x", "y", "z"};
  } else if (o.fixture == "random") {
    if (o.n < 1) throw ParseError("--n must be positive");
    std::mt19937_64 rng(o.seed);
    f = io::point_set(random_poincare_sites(rng, o.n), Mode::exact, output_model(o, Model::poincare_ball));
  } else {
    throw ParseError("unknown fixture '" + o.fixture + "'");
  }
  f.provenance.command = "fixture " + o.fixture;
  f.provenance.seed = o.seed;
  emit(o.out, io::dump(io::to_json(f)), out);
  return kOk;
}

void common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--in", o.in, "Input file");
  sub->add_option("--out", o.out, "Output file (default stdout)");
  sub->add_option("--model", o.model, "Chart of input points without a model tag, or of fixture output");
  auto* ex = sub->add_flag("--exact", o.exact, "Exact rational arithmetic");
  auto* fl = sub->add_flag("--float", o.floating, "Floating-point coordinates");
  ex->excludes(fl);
  sub->add_option("--eps", o.eps, "Float-mode facet merge tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", o.seed, "Seed for randomized steps");
  sub->add_option("--max-word-length", o.max_word_length, "Word length L of the orbit ball")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--render-model", o.render_model, "SVG chart")
      ->check(CLI::IsMember({"poincare", "halfplane"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delaunay, Voronoi and geometric-dual tessellations of hyperbolic space", "hypdel"};
  app.require_subcommand(1);
  Options o;

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const char* name : {"delaunay", "voronoi", "dual", "verify", "orbit", "fixture", "render"}) {
    CLI::App* s = app.add_subcommand(name);
    common_flags(s, o);
    subs.emplace_back(name, s);
  }
  auto sub = [&](const std::string& name) {
    for (auto& [n, s] : subs)
      if (n == name) return s;
    return static_cast<CLI::App*>(nullptr);
  };
  for (const char* name : {"delaunay", "voronoi", "dual", "orbit"})
    sub(name)->add_option("--svg", o.svg, "Also write an SVG figure");
  sub("delaunay")->description("Delaunay tessellation of a point set");
  sub("voronoi")->description("Delaunay tessellation with its Voronoi diagram");
  sub("dual")->description("Delaunay tessellation with its geometric-dual subcomplex");
  sub("verify")->description("Cross-check against brute-force oracles (one file or a random corpus)");
  sub("verify")->add_option("--count", o.count, "Corpus size when --in is absent")->check(CLI::PositiveNumber);
  sub("verify")->add_option("--samples", o.samples, "Voronoi membership samples per instance")
      ->check(CLI::NonNegativeNumber);
  sub("orbit")->description("Truncated orbit of a group file and its invariance report");
  sub("orbit")->add_option("--margin", o.margin, "Word-length margin defining interior cells")
      ->check(CLI::NonNegativeNumber);
  sub("orbit")->add_option("--cusp", o.cusp, "Light-like cusp direction, comma separated");
  sub("fixture")->description("Write a fixture point set or group file");
  sub("fixture")
      ->add_option("name", o.fixture, "bad-example | three-point | punctured-torus | random")
      ->required()
      ->check(CLI::IsMember({"bad-example", "three-point", "punctured-torus", "random"}));
  sub("fixture")->add_option("--r-inf", o.r_inf, "Limiting radius of the bad example (> 1)");
  sub("fixture")->add_option("--n", o.n, "Number of points per side (bad-example) or of sites (random)");
  sub("fixture")->add_option("--config", o.config, "Three-point configuration")
      ->check(CLI::IsMember({"left", "middle", "right"}));
  sub("render")->description("SVG figure of a tessellation or point set");

  std::vector<std::string> argv_store{"hypdel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (sub("delaunay")->parsed()) return cmd_tessellate(o, "delaunay", out);
    if (sub("voronoi")->parsed()) return cmd_tessellate(o, "voronoi", out);
    if (sub("dual")->parsed()) return cmd_tessellate(o, "dual", out);
    if (sub("render")->parsed()) return cmd_render(o, out);
    if (sub("verify")->parsed()) return cmd_verify(o, out, err);
    if (sub("orbit")->parsed()) return cmd_orbit(o, out);
    if (sub("fixture")->parsed()) return cmd_fixture(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace hypdel::cli

#include "io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hypdel::io {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Json scalar(const Rational& q, Mode mode) {
  return mode == Mode::exact ? to_string(q) : shortest(to_double(q));
}

Rational read_scalar(const Json& j, Mode mode) {
  Rational q;
  if (j.is_string()) {
    q = parse_rational(j.get<std::string>());
  } else if (j.is_number()) {
    q = parse_rational(j.dump());
  } else {
    throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
  }
  if (mode == Mode::floating) q = exact_from_double(to_double(q));
  return q;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return a;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key);
}

Json qvec(const QVec& v, Mode mode) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(scalar(v[i], mode));
  return a;
}

QVec read_qvec(const Json& j, Mode mode) {
  if (!j.is_array()) throw ParseError("expected a coordinate array, got " + j.dump());
  QVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = read_scalar(j[i], mode);
  return v;
}

Json dvec(const DVec& v) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

DVec read_dvec(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a number array, got " + j.dump());
  DVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("expected a number, got " + j[i].dump());
    v[i] = j[i].get<double>();
  }
  return v;
}

std::vector<int> read_ids(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an id array, got " + j.dump());
  std::vector<int> ids;
  for (const Json& e : j) {
    if (!e.is_number_integer()) throw ParseError("expected an integer id, got " + e.dump());
    ids.push_back(e.get<int>());
  }
  return ids;
}

Mode read_mode(const Json& j) {
  std::string m = get_or<std::string>(j, "mode", "exact");
  if (m == "exact") return Mode::exact;
  if (m == "float") return Mode::floating;
  throw ParseError("unknown mode '" + m + "'");
}

Model read_model(const Json& j, Model fallback) {
  if (!j.contains("model")) return fallback;
  try {
    return parse_model(get<std::string>(j, "model"));
  } catch (const GeometryError& e) {
    throw ParseError(e.what());
  }
}

SphereKind read_kind(const std::string& s) {
  for (SphereKind k : {SphereKind::metric, SphereKind::horosphere, SphereKind::equidistant,
                       SphereKind::totally_geodesic})
    if (to_string(k) == s) return k;
  throw ParseError("unknown circumsphere kind '" + s + "'");
}

std::string side_name(Side s) {
  switch (s) {
    case Side::geq: return "geq";
    case Side::leq: return "leq";
    case Side::both: return "both";
  }
  return "geq";
}

Side read_side(const std::string& s) {
  if (s == "geq") return Side::geq;
  if (s == "leq") return Side::leq;
  if (s == "both") return Side::both;
  throw ParseError("unknown side '" + s + "'");
}

Json provenance_json(const Provenance& p) {
  Json j;
  j["tool"] = p.tool;
  j["version"] = p.version;
  j["seed"] = p.seed;
  if (!p.command.empty()) j["command"] = p.command;
  if (p.float_geometry) j["float_geometry"] = true;
  return j;
}

Provenance read_provenance(const Json& j) {
  Provenance p;
  if (!j.contains("provenance")) return p;
  const Json& q = j["provenance"];
  p.tool = get_or<std::string>(q, "tool", kToolName);
  p.version = get_or<std::string>(q, "version", kToolVersion);
  p.seed = get_or<std::uint64_t>(q, "seed", 0);
  p.command = get_or<std::string>(q, "command", "");
  p.float_geometry = get_or<bool>(q, "float_geometry", false);
  return p;
}

std::size_t chart_size(Model m, int dim) { return m == Model::hyperboloid ? dim + 1 : dim; }

Json halfspace_json(const HalfSpaceRecord& h, Mode mode) {
  Json j;
  j["u"] = qvec(h.u, mode);
  j["c"] = scalar(h.c, mode);
  j["side"] = side_name(h.side);
  return j;
}

HalfSpaceRecord read_halfspace(const Json& j, Mode mode) {
  return {read_qvec(field(j, "u"), mode), read_scalar(field(j, "c"), mode),
          read_side(get_or<std::string>(j, "side", "both"))};
}

}  // namespace

Json to_json(const PointSetFile& f) {
  Json j;
  j["model"] = to_string(f.model);
  j["dim"] = f.dim;
  j["mode"] = to_string(f.mode);
  Json pts = Json::array();
  for (const auto& p : f.points) {
    Json row = Json::array();
    for (const Rational& c : p) row.push_back(scalar(c, f.mode));
    pts.push_back(row);
  }
  j["points"] = pts;
  if (!f.labels.empty()) j["labels"] = f.labels;
  j["provenance"] = provenance_json(f.provenance);
  return j;
}

PointSetFile point_set_from_json(const Json& j) {
  PointSetFile f;
  f.model = read_model(j, Model::hyperboloid);
  f.mode = read_mode(j);
  const Json& pts = array_field(j, "points");
  int guess = 2;
  if (!pts.empty() && pts[0].is_array())
    guess = static_cast<int>(pts[0].size()) - (f.model == Model::hyperboloid ? 1 : 0);
  f.dim = get_or<int>(j, "dim", guess);
  if (f.dim < 1) throw ParseError("dim must be positive");
  for (const Json& p : pts) {
    if (!p.is_array() || p.size() != chart_size(f.model, f.dim))
      throw ParseError("point " + p.dump() + " does not have " + std::to_string(chart_size(f.model, f.dim)) +
                       " coordinates");
    std::vector<Rational> row;
    for (const Json& c : p) row.push_back(read_scalar(c, f.mode));
    f.points.push_back(std::move(row));
  }
  if (j.contains("labels")) {
    f.labels = get<std::vector<std::string>>(j, "labels");
    if (f.labels.size() != f.points.size()) throw ParseError("labels and points differ in length");
  }
  f.provenance = read_provenance(j);
  return f;
}

Json to_json(const TessellationFile& f) {
  Json j;
  j["dim"] = f.dim;
  j["mode"] = to_string(f.mode);
  Json sites = Json::array();
  for (const QVec& s : f.sites) sites.push_back(qvec(s, f.mode));
  j["sites"] = sites;
  Json cells = Json::array();
  for (const CellRecord& c : f.cells) {
    Json cj;
    cj["id"] = c.id;
    cj["dim"] = c.dim;
    cj["vertices"] = c.vertices;
    cj["faces"] = c.faces;
    cj["top"] = c.top;
    const SphereRecord& s = c.circumsphere;
    Json sj;
    sj["kind"] = to_string(s.kind);
    Json params;
    params["u"] = qvec(s.u, f.mode);
    params["c"] = scalar(s.c, f.mode);
    switch (s.kind) {
      case SphereKind::metric:
        params["center"] = dvec(s.center);
        params["radius"] = s.radius;
        break;
      case SphereKind::horosphere:
        params["ideal"] = qvec(s.ideal, f.mode);
        break;
      case SphereKind::equidistant:
        params["axis"] = dvec(s.axis);
        params["distance"] = s.distance;
        params["component"] = s.component;
        break;
      case SphereKind::totally_geodesic:
        params["axis"] = dvec(s.axis);
        break;
    }
    if (s.non_unique) params["non_unique"] = true;
    sj["params"] = params;
    cj["circumsphere"] = sj;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  if (f.voronoi) {
    Json vs = Json::array();
    for (const VoronoiRecord& v : *f.voronoi) {
      Json vj;
      vj["id"] = v.id;
      vj["dim"] = v.dim;
      vj["sites"] = v.sites;
      Json eq = Json::array(), hs = Json::array();
      for (const auto& h : v.equalities) eq.push_back(halfspace_json(h, f.mode));
      for (const auto& h : v.halfspaces) hs.push_back(halfspace_json(h, f.mode));
      vj["equalities"] = eq;
      vj["halfspaces"] = hs;
      vj["witness"] = qvec(v.witness, Mode::exact);
      vj["point"] = dvec(v.point);
      vj["dual_cell"] = v.dual_cell;
      vj["faces"] = v.faces;
      vs.push_back(vj);
    }
    j["voronoi"] = vs;
  }
  if (f.dual) j["dual"] = *f.dual;
  if (!f.warnings.empty()) j["warnings"] = f.warnings;
  j["provenance"] = provenance_json(f.provenance);
  return j;
}

TessellationFile tessellation_from_json(const Json& j) {
  TessellationFile f;
  f.mode = read_mode(j);
  f.dim = get<int>(j, "dim");
  if (f.dim < 1) throw ParseError("dim must be positive");
  for (const Json& s : array_field(j, "sites")) {
    QVec v = read_qvec(s, f.mode);
    if (v.size() != static_cast<std::size_t>(f.dim) + 1)
      throw ParseError("site " + s.dump() + " is not a hyperboloid point of dimension " + std::to_string(f.dim));
    f.sites.push_back(std::move(v));
  }
  const int m = static_cast<int>(f.sites.size());
  for (const Json& cj : array_field(j, "cells")) {
    CellRecord c;
    c.id = get<int>(cj, "id");
    c.dim = get<int>(cj, "dim");
    c.vertices = read_ids(field(cj, "vertices"));
    c.faces = read_ids(get_or<Json>(cj, "faces", Json::array()));
    c.top = get_or<bool>(cj, "top", false);
    for (int v : c.vertices)
      if (v < 0 || v >= m) throw ParseError("cell " + std::to_string(c.id) + " references missing site " + std::to_string(v));
    if (cj.contains("circumsphere")) {
      const Json& sj = cj["circumsphere"];
      SphereRecord& s = c.circumsphere;
      s.kind = read_kind(get<std::string>(sj, "kind"));
      const Json& p = field(sj, "params");
      s.u = read_qvec(field(p, "u"), f.mode);
      s.c = read_scalar(field(p, "c"), f.mode);
      s.non_unique = get_or<bool>(p, "non_unique", false);
      if (p.contains("center")) s.center = read_dvec(p["center"]);
      if (p.contains("radius")) s.radius = get<double>(p, "radius");
      if (p.contains("ideal")) s.ideal = read_qvec(p["ideal"], f.mode);
      if (p.contains("axis")) s.axis = read_dvec(p["axis"]);
      if (p.contains("distance")) s.distance = get<double>(p, "distance");
      if (p.contains("component")) s.component = get<int>(p, "component");
    }
    f.cells.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < f.cells.size(); ++i) {
    if (f.cells[i].id != static_cast<int>(i)) throw ParseError("cell ids must be 0, 1, 2, ... in order");
    for (int face : f.cells[i].faces)
      if (face < 0 || face >= static_cast<int>(f.cells.size()))
        throw ParseError("cell " + std::to_string(i) + " references missing face " + std::to_string(face));
  }
  if (j.contains("voronoi")) {
    std::vector<VoronoiRecord> vs;
    for (const Json& vj : array_field(j, "voronoi")) {
      VoronoiRecord v;
      v.id = get<int>(vj, "id");
      v.dim = get<int>(vj, "dim");
      v.sites = read_ids(field(vj, "sites"));
      for (const Json& h : array_field(vj, "equalities")) v.equalities.push_back(read_halfspace(h, f.mode));
      for (const Json& h : array_field(vj, "halfspaces")) v.halfspaces.push_back(read_halfspace(h, f.mode));
      v.witness = read_qvec(field(vj, "witness"), Mode::exact);
      v.point = read_dvec(field(vj, "point"));
      v.dual_cell = get<int>(vj, "dual_cell");
      v.faces = read_ids(get_or<Json>(vj, "faces", Json::array()));
      vs.push_back(std::move(v));
    }
    f.voronoi = std::move(vs);
  }
  if (j.contains("dual")) f.dual = read_ids(j["dual"]);
  f.warnings = get_or<std::vector<std::string>>(j, "warnings", {});
  f.provenance = read_provenance(j);
  return f;
}

Json to_json(const GroupFile& g) {
  Json j;
  Json gens = Json::array();
  for (const auto& m : g.generators)
    gens.push_back(Json::array({Json::array({to_string(m[0]), to_string(m[1])}),
                                Json::array({to_string(m[2]), to_string(m[3])})}));
  j["generators"] = gens;
  j["model"] = to_string(g.model);
  Json bases = Json::array();
  for (const auto& b : g.bases) {
    Json row = Json::array();
    for (const Rational& c : b) row.push_back(to_string(c));
    bases.push_back(row);
  }
  j["bases"] = bases;
  j["max_word_length"] = g.max_word_length;
  return j;
}

GroupFile group_from_json(const Json& j) {
  GroupFile g;
  for (const Json& m : array_field(j, "generators")) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
      throw ParseError("generator " + m.dump() + " is not a 2x2 matrix");
    g.generators.push_back({read_scalar(m[0][0], Mode::exact), read_scalar(m[0][1], Mode::exact),
                            read_scalar(m[1][0], Mode::exact), read_scalar(m[1][1], Mode::exact)});
  }
  g.model = read_model(j, Model::hyperboloid);
  for (const Json& b : array_field(j, "bases")) {
    if (!b.is_array() || b.size() != chart_size(g.model, 2))
      throw ParseError("base point " + b.dump() + " has the wrong number of coordinates");
    std::vector<Rational> row;
    for (const Json& c : b) row.push_back(read_scalar(c, Mode::exact));
    g.bases.push_back(std::move(row));
  }
  g.max_word_length = get_or<int>(j, "max_word_length", 0);
  if (g.max_word_length < 0) throw ParseError("max_word_length must be non-negative");
  return g;
}

bool is_tessellation(const Json& j) { return j.is_object() && j.contains("cells"); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::vector<HPoint> lift_points(const PointSetFile& f) {
  std::vector<HPoint> out;
  out.reserve(f.points.size());
  for (const auto& p : f.points) out.push_back(lift(ModelPoint{f.model, p}, f.mode));
  return out;
}

PointSetFile point_set(const std::vector<HPoint>& sites, Mode mode, Model model) {
  PointSetFile f;
  f.model = model;
  f.mode = mode;
  f.dim = sites.empty() ? 2 : static_cast<int>(sites.front().dim());
  for (const HPoint& s : sites) {
    std::vector<Rational> row;
    if (mode == Mode::exact) {
      switch (model) {
        case Model::hyperboloid: row = s.q().coords(); break;
        case Model::poincare_ball: row = to_poincare(s.q()); break;
        case Model::klein_ball: row = to_klein(s.q()); break;
        case Model::upper_half_space: row = to_upper_half(s.q()); break;
      }
    } else {
      std::vector<double> d;
      switch (model) {
        case Model::hyperboloid: d = s.d().coords(); break;
        case Model::poincare_ball: d = to_poincare(s.d()); break;
        case Model::klein_ball: d = to_klein(s.d()); break;
        case Model::upper_half_space: d = to_upper_half(s.d()); break;
      }
      for (double x : d) row.push_back(exact_from_double(x));
    }
    f.points.push_back(std::move(row));
  }
  return f;
}

TessellationFile tessellation_file(const Tessellation& t, const VoronoiDiagram* v, const GeometricDual* dual) {
  TessellationFile f;
  f.dim = t.n;
  f.mode = t.mode;
  for (const HPoint& s : t.sites) f.sites.push_back(s.q());
  for (const DelaunayCell& c : t.cells) {
    CellRecord r;
    r.id = c.id;
    r.dim = c.dim;
    r.vertices = c.vertices;
    r.faces = c.faces;
    r.top = c.top;
    const Circumsphere& s = c.sphere;
    r.circumsphere.kind = s.kind;
    r.circumsphere.u = s.plane.u;
    r.circumsphere.c = s.plane.c;
    r.circumsphere.non_unique = s.non_unique;
    r.circumsphere.center = s.center;
    r.circumsphere.radius = s.radius;
    r.circumsphere.ideal = s.ideal;
    r.circumsphere.axis = s.axis;
    r.circumsphere.distance = s.distance;
    r.circumsphere.component = s.component;
    f.cells.push_back(std::move(r));
  }
  if (v) {
    std::vector<VoronoiRecord> vs;
    for (const VoronoiCell& c : v->cells) {
      VoronoiRecord r;
      r.id = c.id;
      r.dim = c.dim;
      r.sites = c.sites;
      for (const QPlane& p : c.equalities) r.equalities.push_back({p.u, p.c, Side::both});
      for (const auto& h : c.halfspaces) r.halfspaces.push_back({h.plane.u, h.plane.c, h.side});
      r.witness = c.witness;
      r.point = c.point;
      r.dual_cell = c.dual_cell;
      r.faces = c.faces;
      vs.push_back(std::move(r));
    }
    f.voronoi = std::move(vs);
  }
  if (dual) f.dual = dual->cells;
  f.warnings = t.warnings;
  f.provenance.seed = t.seed;
  return f;
}

std::vector<HPoint> sites_of(const TessellationFile& f) {
  std::vector<HPoint> out;
  for (const QVec& s : f.sites) out.push_back(HPoint::restore(s, f.mode));
  return out;
}

std::vector<GroupElement> group_generators(const GroupFile& g) {
  std::vector<GroupElement> gens;
  for (const auto& m : g.generators) gens.push_back(sl2_to_so21(SL2{m[0], m[1], m[2], m[3]}));
  return label_generators(std::move(gens));
}

std::vector<HPoint> group_bases(const GroupFile& g, Mode mode) {
  std::vector<HPoint> out;
  for (const auto& b : g.bases) out.push_back(lift(ModelPoint{g.model, b}, mode));
  return out;
}

GroupFile group_file(const std::vector<GroupElement>& gens, const std::vector<HPoint>& bases, int max_word_length) {
  GroupFile g;
  for (const GroupElement& e : gens) {
    if (!e.has_sl2) throw GeometryError("group files hold SL(2) generators only");
    g.generators.push_back({e.sl2.a, e.sl2.b, e.sl2.c, e.sl2.d});
  }
  g.model = Model::hyperboloid;
  for (const HPoint& b : bases) g.bases.push_back(b.q().coords());
  g.max_word_length = max_word_length;
  return g;
}

}  // namespace hypdel::io

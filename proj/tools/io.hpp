#pragma once

// JSON file formats of the command-line tool. Rationals are written as
// "p/q" strings; float-mode coordinates as shortest round-trip decimals.

#include "hypdel/orbit.hpp"
#include "hypdel/voronoi.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypdel::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hypdel";
inline constexpr const char* kToolVersion = "0.1.0";

struct Provenance {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::uint64_t seed = 0;
  std::string command;
  /// Set when part of the output (SVG geometry) was computed in doubles.
  bool float_geometry = false;

  bool operator==(const Provenance&) const = default;
};

struct PointSetFile {
  Model model = Model::hyperboloid;
  /// n, the dimension of H^n.
  int dim = 2;
  Mode mode = Mode::exact;
  /// Chart coordinates: n + 1 per point for the hyperboloid, n otherwise.
  std::vector<std::vector<Rational>> points;
  /// Optional per-point labels (orbit words, fixture names).
  std::vector<std::string> labels;
  Provenance provenance;

  bool operator==(const PointSetFile&) const = default;
};

struct SphereRecord {
  SphereKind kind = SphereKind::metric;
  QVec u;
  Rational c;
  bool non_unique = false;
  DVec center;
  double radius = 0.0;
  QVec ideal;
  DVec axis;
  double distance = 0.0;
  int component = 0;

  bool operator==(const SphereRecord&) const = default;
};

struct CellRecord {
  int id = -1;
  int dim = 0;
  std::vector<int> vertices;
  std::vector<int> faces;
  bool top = false;
  SphereRecord circumsphere;

  bool operator==(const CellRecord&) const = default;
};

struct HalfSpaceRecord {
  QVec u;
  Rational c;
  Side side = Side::geq;

  bool operator==(const HalfSpaceRecord&) const = default;
};

struct VoronoiRecord {
  int id = -1;
  int dim = 0;
  std::vector<int> sites;
  std::vector<HalfSpaceRecord> equalities;
  std::vector<HalfSpaceRecord> halfspaces;
  QVec witness;
  DVec point;
  int dual_cell = -1;
  std::vector<int> faces;

  bool operator==(const VoronoiRecord&) const = default;
};

struct TessellationFile {
  int dim = 2;
  Mode mode = Mode::exact;
  /// Hyperboloid coordinates of the sites.
  std::vector<QVec> sites;
  std::vector<CellRecord> cells;
  std::optional<std::vector<VoronoiRecord>> voronoi;
  /// Delaunay cell ids of the geometric dual.
  std::optional<std::vector<int>> dual;
  std::vector<std::string> warnings;
  Provenance provenance;

  bool operator==(const TessellationFile&) const = default;
};

struct GroupFile {
  /// Rows [[a, b], [c, d]] of SL(2, Q) matrices, as a, b, c, d.
  std::vector<std::array<Rational, 4>> generators;
  Model model = Model::hyperboloid;
  std::vector<std::vector<Rational>> bases;
  int max_word_length = 0;

  bool operator==(const GroupFile&) const = default;
};

Json to_json(const PointSetFile& f);
Json to_json(const TessellationFile& f);
Json to_json(const GroupFile& f);

/// All readers throw ParseError on malformed documents.
PointSetFile point_set_from_json(const Json& j);
TessellationFile tessellation_from_json(const Json& j);
GroupFile group_from_json(const Json& j);

/// Whether the document looks like a TessellationFile (it has "cells").
bool is_tessellation(const Json& j);

/// Two-space indented, newline terminated.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_json(const std::string& path);
/// "-" or empty writes to stdout.
void write_text(const std::string& path, const std::string& text);

/// Lifts the points to the hyperboloid; GeometryError if a point violates
/// the model (outside the ball, below the boundary, off the sheet).
std::vector<HPoint> lift_points(const PointSetFile& f);
/// Hyperboloid points in the given chart.
PointSetFile point_set(const std::vector<HPoint>& sites, Mode mode, Model model = Model::hyperboloid);

TessellationFile tessellation_file(const Tessellation& t, const VoronoiDiagram* v = nullptr,
                                   const GeometricDual* dual = nullptr);
std::vector<HPoint> sites_of(const TessellationFile& f);

std::vector<GroupElement> group_generators(const GroupFile& g);
std::vector<HPoint> group_bases(const GroupFile& g, Mode mode);
GroupFile group_file(const std::vector<GroupElement>& gens, const std::vector<HPoint>& bases, int max_word_length);

}  // namespace hypdel::io

#include "cli.hpp"
#include "io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace hypdel;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hypdel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string group(const std::string& svg, const std::string& cls) {
  auto start = svg.find("<g class=\"" + cls + "\">");
  if (start == std::string::npos) return "";
  return svg.substr(start, svg.find("</g>", start) - start);
}

}  // namespace

TEST_F(Cli, DelaunayOfThreePoints) {
  std::string in = write("p.json", R"({"model": "poincare", "points": [["1/3", "0"], ["0", "1/4"], ["-1/5", "-1/6"]]})");
  Result r = run({"delaunay", "--in", in});
  ASSERT_EQ(r.code, 0) << r.err;
  io::TessellationFile t = io::tessellation_from_json(io::parse(r.out));
  int triangles = 0;
  for (const auto& c : t.cells) triangles += c.dim == 2;
  EXPECT_EQ(triangles, 1);
  EXPECT_EQ(t.cells.size(), 7U);
  EXPECT_EQ(t.mode, Mode::exact);
  EXPECT_EQ(t.provenance.tool, "hypdel");
}

TEST_F(Cli, OutFlagWritesTheSameBytes) {
  std::string in = write("p.json", R"({"model": "poincare", "points": [["1/3", "0"], ["0", "1/4"], ["-1/5", "-1/6"]]})");
  Result a = run({"voronoi", "--in", in});
  Result b = run({"voronoi", "--in", in, "--out", path("t.json")});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(read(path("t.json")), a.out);
}

TEST_F(Cli, FloatModeFlag) {
  std::string in = write("p.json", R"({"model": "poincare", "points": [["1/3", "0"], ["0", "1/4"], ["-1/5", "-1/6"]]})");
  Result r = run({"dual", "--in", in, "--float"});
  ASSERT_EQ(r.code, 0) << r.err;
  io::TessellationFile t = io::tessellation_from_json(io::parse(r.out));
  EXPECT_EQ(t.mode, Mode::floating);
  ASSERT_TRUE(t.dual.has_value());
  EXPECT_EQ(t.dual->size(), 7U);
}

TEST_F(Cli, BadExampleFixtureHasSeventeenPoints) {
  Result r = run({"fixture", "bad-example", "--r-inf", "1.25", "--n", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  io::PointSetFile f = io::point_set_from_json(io::parse(r.out));
  EXPECT_EQ(f.points.size(), 17U);
  EXPECT_EQ(f.mode, Mode::floating);
  EXPECT_EQ(f.labels.front(), "p0");
}

TEST_F(Cli, FixturesFeedTheOtherCommands) {
  ASSERT_EQ(run({"fixture", "punctured-torus", "--max-word-length", "2", "--out", path("g.json")}).code, 0);
  Result o = run({"orbit", "--in", path("g.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  io::Json j = io::parse(o.out);
  EXPECT_EQ(j["points"]["points"].size(), 17U);
  EXPECT_EQ(j["points"]["labels"][0], "e");

  ASSERT_EQ(run({"fixture", "random", "--n", "6", "--seed", "4", "--out", path("r.json")}).code, 0);
  EXPECT_EQ(run({"verify", "--in", path("r.json"), "--samples", "200"}).code, 0);
  ASSERT_EQ(run({"fixture", "three-point", "--config", "right", "--out", path("t.json")}).code, 0);
  Result d = run({"dual", "--in", path("t.json")});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(io::tessellation_from_json(io::parse(d.out)).dual->size(), 5U);
}

TEST_F(Cli, VerifyCorpus) {
  Result r = run({"verify", "--count", "20", "--samples", "100", "--seed", "3", "--out", path("report.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0 mismatches in 20 instances"), std::string::npos) << r.out;
  EXPECT_TRUE(io::read_json(path("report.json")).is_object());
}

TEST_F(Cli, VerifyMismatchExitsOne) {
  // The short diagonal is the Delaunay edge; swap which pair is short.
  std::string wide = write("wide.json", R"({"model": "poincare", "points": [["1/2", "0"], ["0", "1/5"], ["-1/2", "0"], ["0", "-1/5"]]})");
  std::string tall = write("tall.json", R"({"model": "poincare", "points": [["1/5", "0"], ["0", "1/2"], ["-1/5", "0"], ["0", "-1/2"]]})");
  Result a = run({"delaunay", "--in", wide});
  Result b = run({"delaunay", "--in", tall});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  io::Json forged = io::parse(a.out);
  forged["cells"] = io::parse(b.out)["cells"];
  std::string in = write("forged.json", io::dump(forged));
  Result r = run({"verify", "--in", in, "--samples", "100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("mismatch"), std::string::npos);
  EXPECT_EQ(run({"verify", "--in", write("ok.json", a.out), "--samples", "100"}).code, 0);
}

TEST_F(Cli, ParseFailuresExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"triangulate"}).code, 2);
  EXPECT_EQ(run({"delaunay", "--exact", "--float"}).code, 2);
  EXPECT_EQ(run({"delaunay", "--in", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"delaunay", "--in", write("bad.json", "{\"points\": [")}).code, 2);
  EXPECT_EQ(run({"delaunay", "--in", write("out.json", R"({"model": "poincare", "points": [["2", "0"]]})")}).code, 2);
  EXPECT_EQ(run({"fixture", "bad-example", "--r-inf", "1"}).code, 2);
  EXPECT_EQ(run({"fixture", "teapot"}).code, 2);
  EXPECT_EQ(run({"render", "--in", write("p.json", R"({"points": [["1", "0", "0"]]})"), "--render-model", "klein"}).code,
            2);
  Result r = run({"delaunay", "--in", path("missing.json")});
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, RenderHalfplane) {
  ASSERT_EQ(run({"fixture", "three-point", "--config", "left", "--out", path("p.json")}).code, 0);
  ASSERT_EQ(run({"voronoi", "--in", path("p.json"), "--out", path("t.json")}).code, 0);
  Result r = run({"render", "--in", path("t.json"), "--render-model", "halfplane"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string& svg = r.out;
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_EQ(count(group(svg, "sites"), "<circle"), 3);
  EXPECT_EQ(count(group(svg, "edges"), "<path"), 3);
  EXPECT_EQ(count(group(svg, "circumspheres"), "<circle"), 1);
  EXPECT_NE(group(svg, "voronoi"), "");
  EXPECT_NE(svg.find("class=\"boundary\""), std::string::npos);
}

TEST_F(Cli, RenderEmptySiteListIsJustTheBoundary) {
  std::string in = write("e.json", R"({"points": []})");
  Result r = run({"render", "--in", in, "--render-model", "poincare"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("class=\"boundary\""), std::string::npos);
  EXPECT_EQ(count(group(r.out, "sites"), "<circle"), 0);
  EXPECT_EQ(count(r.out, "<path"), 0);
}

TEST_F(Cli, PoincareHorocycleIsTangentToTheBoundary) {
  ASSERT_EQ(run({"fixture", "three-point", "--config", "middle", "--out", path("p.json")}).code, 0);
  Result r = run({"dual", "--in", path("p.json"), "--svg", path("m.svg"), "--render-model", "poincare"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string svg = read(path("m.svg"));
  std::smatch m;
  std::string spheres = group(svg, "circumspheres");
  ASSERT_TRUE(std::regex_search(spheres, m, std::regex(R"re(cx="([-0-9.]+)" cy="([-0-9.]+)" r="([-0-9.]+)")re")));
  double cx = std::stod(m[1]) - 260, cy = std::stod(m[2]) - 260, rad = std::stod(m[3]);
  EXPECT_NEAR(std::hypot(cx, cy) + rad, 240.0, 2e-3);
  EXPECT_NE(spheres.find("stroke-dasharray"), std::string::npos);
  // The triangle is not dual, so its far edge is drawn dashed.
  EXPECT_EQ(count(group(svg, "edges"), "stroke-dasharray"), 1);
}

TEST_F(Cli, RenderIsByteIdentical) {
  ASSERT_EQ(run({"fixture", "bad-example", "--r-inf", "1.25", "--n", "8", "--out", path("b.json")}).code, 0);
  std::string first;
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run({"dual", "--in", path("b.json"), "--float", "--out", path("t.json")}).code, 0);
    Result r = run({"render", "--in", path("t.json"), "--render-model", "halfplane"});
    ASSERT_EQ(r.code, 0) << r.err;
    if (i == 0) first = r.out;
    else EXPECT_EQ(r.out, first);
  }
  Result p = run({"render", "--in", path("b.json"), "--render-model", "halfplane"});
  EXPECT_EQ(p.code, 0) << p.err;
}

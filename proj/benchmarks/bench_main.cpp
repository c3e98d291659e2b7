#include "hypdel/orbit.hpp"
#include "hypdel/verify.hpp"

#include <benchmark/benchmark.h>

using namespace hypdel;

namespace {

std::vector<HPoint> sites(int n, bool exact) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  auto s = random_poincare_sites(rng, n);
  if (exact) return s;
  std::vector<HPoint> f;
  for (const auto& p : s) f.push_back(HPoint::from_float(p.d()));
  return f;
}

void BM_Hull(benchmark::State& state) {
  auto s = sites(static_cast<int>(state.range(0)), true);
  std::vector<QVec> pts;
  for (const auto& p : s) pts.push_back(p.q());
  for (auto _ : state) benchmark::DoNotOptimize(build_hull(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hull)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_DelaunayExact(benchmark::State& state) {
  auto s = sites(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_tessellation(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelaunayExact)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_DelaunayFloat(benchmark::State& state) {
  auto s = sites(static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_tessellation(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelaunayFloat)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Voronoi(benchmark::State& state) {
  Tessellation t = delaunay_tessellation(sites(static_cast<int>(state.range(0)), true));
  for (auto _ : state) benchmark::DoNotOptimize(voronoi_diagram(t));
}
BENCHMARK(BM_Voronoi)->RangeMultiplier(2)->Range(8, 128);

void BM_BruteForce(benchmark::State& state) {
  auto s = sites(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_delaunay(s));
}
BENCHMARK(BM_BruteForce)->DenseRange(4, 12, 4);

void BM_OrbitTessellation(benchmark::State& state) {
  auto gens = punctured_torus_generators();
  for (auto _ : state) {
    OrbitSet o = orbit_ball(gens, {HPoint::from_exact(QVec{1, 0, 0})}, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(invariance_report(delaunay_tessellation(o.points), o, gens));
  }
}
BENCHMARK(BM_OrbitTessellation)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

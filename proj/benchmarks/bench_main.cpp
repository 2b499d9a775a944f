#include <benchmark/benchmark.h>

#include "btr/engine.hpp"
#include "btr/global.hpp"
#include "btr/kdv.hpp"
#include "btr/matrix_model.hpp"
#include "btr/psi.hpp"

using namespace btr;

namespace {

const char* kTwoBranch = R"({"branches":[{"id":1,"alpha":"1"},{"id":2,"alpha":"-2/3"}],
 "omega01_tail":{"1":{"4":"1/3","3":"1/5"},"2":{"6":"2"}},
 "phi02":{"1,1":{"0,0":"1/5","1,2":"1/2","2,1":"1/2"},"1,2":{"0,1":"1/7"},"2,1":{"1,0":"1/7"}},
 "blobs":[{"g":0,"n":3,"coeffs":{"1,1,1":{"0,0,0":"2"}}},{"g":1,"n":1,"coeffs":{"2":{"2":"1/3","1":"1"}}}],
 "blob_kind":"kdv"})";

void BM_PsiIntersection(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psi_intersection(g, {3 * g - 2}));
}
BENCHMARK(BM_PsiIntersection)->DenseRange(1, 4);

void BM_AiryCorrelators(benchmark::State& state) {
  int chi = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Engine e(airy_spec(12));
    for (int c = 1; c <= chi; ++c)
      for (int g = 0; 2 * g - 2 < c; ++g) benchmark::DoNotOptimize(e.omega(g, c - 2 * g + 2).size());
  }
}
BENCHMARK(BM_AiryCorrelators)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_BlobbedCorrelators(benchmark::State& state) {
  int chi = static_cast<int>(state.range(0));
  CurveSpec s = parse_curve_spec(kTwoBranch);
  for (auto _ : state) {
    Engine e(s);
    for (int c = 1; c <= chi; ++c)
      for (int g = 0; 2 * g - 2 < c; ++g) benchmark::DoNotOptimize(e.omega(g, c - 2 * g + 2).size());
  }
}
BENCHMARK(BM_BlobbedCorrelators)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ReducedGraphs(benchmark::State& state) {
  CurveSpec s = parse_curve_spec(kTwoBranch);
  for (auto _ : state) {
    Engine e(s);
    benchmark::DoNotOptimize(KdvBackend(e).omega_via_calG(1, 2).size());
  }
}
BENCHMARK(BM_ReducedGraphs)->Unit(benchmark::kMillisecond);

void BM_FreeEnergyGraphs(benchmark::State& state) {
  CurveSpec s = parse_curve_spec(kTwoBranch);
  for (auto _ : state) {
    Engine e(s);
    benchmark::DoNotOptimize(KdvBackend(e).free_energy(2));
  }
}
BENCHMARK(BM_FreeEnergyGraphs)->Unit(benchmark::kMillisecond);

void BM_FreeEnergyResidue(benchmark::State& state) {
  CurveSpec s = parse_curve_spec(kTwoBranch);
  for (auto _ : state) {
    Engine e(s);
    benchmark::DoNotOptimize(free_energy_popore(e, 2));
  }
}
BENCHMARK(BM_FreeEnergyResidue)->Unit(benchmark::kMillisecond);

void BM_GaussianTorusMoments(benchmark::State& state) {
  for (auto _ : state) {
    mm::GaussianModel M(Scalar(1), 16);
    benchmark::DoNotOptimize(M.moment(1, {8}));
  }
}
BENCHMARK(BM_GaussianTorusMoments)->Unit(benchmark::kMillisecond);

void BM_WickPolygon(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mm::wick_polygon_gluings(1, k));
}
BENCHMARK(BM_WickPolygon)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Parallel kernels against their serial references. Arg 1 runs the parallel
// kernel, arg 0 the serial one.

#include <benchmark/benchmark.h>

#include "hellyrel/derived.hpp"
#include "hellyrel/gamma.hpp"
#include "hellyrel/generators.hpp"
#include "hellyrel/helly.hpp"
#include "hellyrel/quasiconvex.hpp"
#include "hellyrel/rel_cayley.hpp"

using namespace hellyrel;

namespace {

GroupSpec zz_z2() { return GroupSpec({Factor::free_abelian(2, AbelianGenerators::King), Factor::cyclic(2)}, 0); }

void BM_DistanceMatrix(benchmark::State& state) {
  auto g = random_connected_graph(400, 0.02, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? distance_matrix(g) : distance_matrix_serial(g));
}
BENCHMARK(BM_DistanceMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExtremalFunctions(benchmark::State& state) {
  auto g = cycle_graph(12);
  auto d = distance_matrix(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? extremal_functions(g, d) : extremal_functions_serial(g, d));
}
BENCHMARK(BM_ExtremalFunctions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CoarseHelly(benchmark::State& state) {
  auto g = random_connected_graph(12, 0.25, 3);
  auto d = distance_matrix(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? coarse_helly_constant(g, d) : coarse_helly_constant_serial(g, d));
}
BENCHMARK(BM_CoarseHelly)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Quasiconvexity(benchmark::State& state) {
  auto g = king_grid(6, 5);
  auto d = distance_matrix(g);
  VertexSet W{12, 14, 17};
  QGParams q{Rational(2), Rational(1)};
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? quasiconvexity_k(g, d, W, q) : quasiconvexity_k_serial(g, d, W, q));
}
BENCHMARK(BM_Quasiconvexity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeasureBcp(benchmark::State& state) {
  auto spec = zz_z2();
  SamplerOptions opt;
  opt.samples = 300;
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? measure_bcp(spec, opt) : measure_bcp_serial(spec, opt));
}
BENCHMARK(BM_MeasureBcp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeasureTriangles(benchmark::State& state) {
  auto spec = zz_z2();
  SamplerOptions opt;
  opt.samples = 200;
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? measure_triangles(spec, opt) : measure_triangles_serial(spec, opt));
}
BENCHMARK(BM_MeasureTriangles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DerivationHarness(benchmark::State& state) {
  auto spec = zz_z2();
  auto w = build_window(GammaConfig{spec, certified_min_N(spec)}, 6);
  DeriveOptions opt;
  opt.samples = 200;
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? verify_derivation_theorems(w, opt)
                                            : verify_derivation_theorems_serial(w, opt));
}
BENCHMARK(BM_DerivationHarness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

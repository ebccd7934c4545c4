#include <benchmark/benchmark.h>

#include "wedge/matrix_lab.hpp"
#include "wedge/oracle.hpp"
#include "wedge/zoo.hpp"

using namespace wedge;

namespace {

// Generators of a pyramid over a regular-ish k-gon in R^3.
std::vector<QVector> pyramid(int k) {
  std::vector<QVector> gens;
  for (int i = 0; i < k; ++i) {
    long x = (i % 4 == 0) ? 2 : (i % 4 == 2 ? -2 : 0);
    long y = (i % 4 == 1) ? 2 : (i % 4 == 3 ? -2 : 0);
    gens.push_back({Rational(x + i % 3), Rational(y - i % 5), Rational(7)});
  }
  return gens;
}

void BM_DoubleDescription(benchmark::State& state) {
  auto gens = pyramid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(facets_of(gens, 3));
}
BENCHMARK(BM_DoubleDescription)->Arg(8)->Arg(32)->Arg(128);

void BM_StructureWedge(benchmark::State& state) {
  ModularDatum d = zoo_entry(state.range(0) == 3 ? "poincare3" : "poincare4").datum;
  for (auto _ : state) benchmark::DoNotOptimize(structure_wedge(d));
}
BENCHMARK(BM_StructureWedge)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FuzzCompare(benchmark::State& state) {
  ModularDatum d = zoo_entry("poincare3").datum;
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_compare(d, {}, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FuzzCompare)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_StripBound(benchmark::State& state) {
  StripCase c = random_strip_case(7, static_cast<int>(state.range(0)));
  StripGrid grid;
  grid.beta = c.beta;
  for (auto _ : state) benchmark::DoNotOptimize(strip_bound_check(c.a, c.h, grid, 7));
}
BENCHMARK(BM_StripBound)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

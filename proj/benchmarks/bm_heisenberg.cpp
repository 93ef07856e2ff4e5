#include <benchmark/benchmark.h>

#include "ssg/claim1.hpp"

using namespace ssg;

static void BM_HeisMul(benchmark::State& state) {
  HeisElem g(123, -45, 678), h(-9, 87, -654);
  for (auto _ : state) {
    g = heis_mul(g, h);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_HeisMul);

static void BM_HeisPow(benchmark::State& state) {
  HeisElem g(3, 5, -2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heis_pow(g, state.range(0)));
  }
}
BENCHMARK(BM_HeisPow)->Arg(50)->Arg(5000);

static void BM_EndoApply(benchmark::State& state) {
  HeisEndo phi(2, 1, 1, 3, 4, -7);
  HeisElem g(11, -3, 29);
  for (auto _ : state) benchmark::DoNotOptimize(endo_apply(phi, g));
}
BENCHMARK(BM_EndoApply);

static void BM_LatticeCanonicalize(benchmark::State& state) {
  std::vector<HeisElem> gens = {HeisElem(6, 2, 3), HeisElem(2, 8, -1), HeisElem(0, 0, 12)};
  for (auto _ : state) benchmark::DoNotOptimize(lattice_canonicalize(gens));
}
BENCHMARK(BM_LatticeCanonicalize);

static void BM_SolveClaim1(benchmark::State& state) {
  HeisEndo phi(3, 1, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_claim1(phi));
}
BENCHMARK(BM_SolveClaim1);

#include <benchmark/benchmark.h>

#include "ssg/automaton.hpp"

using namespace ssg;

static void BM_ExactTriviality(benchmark::State& state) {
  AutomatonPtr b5 = make_bn(5);
  DerivedGenerators der = derived_free_generators(5, b5);
  StateWord w = StateWord::empty(b5);
  for (long i = 0; i < state.range(0); ++i) w = word_mul(w, der.gens[static_cast<std::size_t>(i % 4)]);
  for (auto _ : state) benchmark::DoNotOptimize(is_trivial(w, TrivialityMode::Exact));
}
BENCHMARK(BM_ExactTriviality)->Arg(2)->Arg(4)->Arg(6);

static void BM_ActDepth(benchmark::State& state) {
  AutomatonPtr b5 = make_bn(5);
  DerivedGenerators der = derived_free_generators(5, b5);
  StateWord w = word_mul(der.gens[0], word_mul(der.gens[1], der.gens[2]));
  TreeWord v(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(act(w, v));
}
BENCHMARK(BM_ActDepth)->Arg(4)->Arg(16)->Arg(64);

#include <benchmark/benchmark.h>

#include "ssg/compiled.hpp"
#include "ssg/constructions.hpp"

using namespace ssg;

namespace {

EndoSystem odometer_system() {
  FamilyPtr z = Family::free_group(1);
  VirtualEndo f;
  f.codomain = z;
  f.domain = subgroup_free(z, subgroup_build({FreeWord({1, 1})}, 1));
  f.apply_kind = ApplyKind::Generic;
  f.images = {GroupElement::free_elem(z, FreeWord({1}))};
  EndoSystem sys;
  sys.codomain = z;
  sys.endos = {f};
  return sys;
}

}  // namespace

static void BM_OdometerAct(benchmark::State& state) {
  CompiledAction action(odometer_system());
  GroupElement a = GroupElement::generator(action.system().codomain, 0);
  TreeWord v(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(action.act(a, v));
}
BENCHMARK(BM_OdometerAct)->Arg(8)->Arg(16);

static void BM_HnnCosetIndex(benchmark::State& state) {
  HeisHnnResult result = build_heis_hnn(HeisEndo(1, 1, 0, 2));  // degree 5^4
  const VirtualEndo& f = result.system.endos[0];
  GroupElement g = element_mul(GroupElement::generator(f.codomain, 0),
                               GroupElement::generator(f.codomain, 2));
  for (auto _ : state) benchmark::DoNotOptimize(f.domain->coset_index(g));
}
BENCHMARK(BM_HnnCosetIndex);

static void BM_ProbeOdometer(benchmark::State& state) {
  CompiledAction action(odometer_system());
  for (auto _ : state) benchmark::DoNotOptimize(faithfulness_probe(action, 4, 6));
}
BENCHMARK(BM_ProbeOdometer);

BENCHMARK_MAIN();

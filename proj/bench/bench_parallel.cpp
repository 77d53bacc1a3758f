#include <benchmark/benchmark.h>

#include "lforge/lift_filtered.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/rector_bs3.hpp"
#include "lforge/tower.hpp"
#include "lforge/wilkerson.hpp"

using namespace lforge;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_TowerSurjectivity(benchmark::State& state) {
  auto p = Presentation::free(CoefficientRing::integers(), {2, 4, 6}, 8);
  HarnessOptions o;
  o.trials = 16;
  o.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(tower_surjectivity(p, 8, 16, o));
}

void BM_Certify(benchmark::State& state) {
  const auto s = chebyshev_structure({2, 3, 5, 7}, 8, 12);
  for (auto _ : state) benchmark::DoNotOptimize(certify(s.adams, 7, 12, mode(state)));
}

void BM_Lim1Orbits(benchmark::State& state) {
  const auto g = FiniteGroup::symmetric(3);
  std::vector<GroupMap> maps(4, GroupMap{0, 1, 2, 3, 4, 5});
  const FiniteGroupTower t(std::vector<FiniteGroup>(5, g), maps);
  for (auto _ : state) benchmark::DoNotOptimize(lim1_orbits(t, mode(state)));
}

void BM_AutGroup(benchmark::State& state) {
  auto ring = CoefficientRing::prime_field(3);
  auto scratch = Presentation::make(ring, {{"x", 1, 0}}, {}, 5);
  auto p = Presentation::make(ring, {{"x", 1, 0}}, {parse_polynomial_terms(*scratch, "x^5")}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(aut_group_of_truncation(p, 0, mode(state)));
}

}  // namespace

BENCHMARK(BM_TowerSurjectivity)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Certify)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lim1Orbits)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AutGroup)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// Serial reference sweeps against the OpenMP kernels.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "ttpybo/groups.hpp"
#include "ttpybo/search.hpp"

using namespace ttpybo;

namespace {

struct Sweep {
  BaseAlgebra base;
  Bihomomorphism alpha;
  Ansatz ansatz;
};

Sweep zp_sweep(int p) {
  auto G = FiniteGroup::abelian({p});
  return {BaseAlgebra(G), bihom_from_matrix(G, ModMatrix(p, {{2}})), Ansatz::roots_of_unity(p)};
}

Sweep z3z3_sweep() {
  auto G = FiniteGroup::abelian({3, 3});
  return {BaseAlgebra(G), bihom_from_matrix(G, ModMatrix(3, {{2, 0}, {0, 2}})), Ansatz::roots_of_unity(3)};
}

void run_sweep(benchmark::State& state, const Sweep& s, bool parallel) {
  if (parallel) omp_set_num_threads(static_cast<int>(state.range(0)));
  std::size_t found = 0;
  for (auto _ : state) {
    auto sols = parallel ? enumerate(s.base, s.alpha, s.ansatz) : enumerate_serial(s.base, s.alpha, s.ansatz);
    found = sols.solutions.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["solutions"] = static_cast<double>(found);
  state.counters["candidates/s"] =
      benchmark::Counter(static_cast<double>(sweep_size(s.base, s.ansatz, UINT64_MAX) * state.iterations()),
                         benchmark::Counter::kIsRate);
}

void BM_Z5Serial(benchmark::State& state) { run_sweep(state, zp_sweep(5), false); }
void BM_Z5Parallel(benchmark::State& state) { run_sweep(state, zp_sweep(5), true); }
void BM_Z7Parallel(benchmark::State& state) { run_sweep(state, zp_sweep(7), true); }
void BM_Z3Z3Serial(benchmark::State& state) { run_sweep(state, z3z3_sweep(), false); }
void BM_Z3Z3Parallel(benchmark::State& state) { run_sweep(state, z3z3_sweep(), true); }

void BM_FormOrbitsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(form_orbits_serial(2, static_cast<int>(state.range(0))));
}

void BM_FormOrbitsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(form_orbits(2, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_Z5Serial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Z5Parallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Z7Parallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Z3Z3Serial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Z3Z3Parallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormOrbitsSerial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormOrbitsParallel)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

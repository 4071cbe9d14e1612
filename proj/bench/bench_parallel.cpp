// Serial reference kernels against their OpenMP versions. Arg 0 = serial, 1 = parallel.
// GRAFTLAB_THREADS caps the thread count of the parallel runs.
#include "graftlab/categories.hpp"
#include "graftlab/monoid_morse.hpp"
#include "graftlab/strata.hpp"

#include <benchmark/benchmark.h>

using namespace graftlab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

ModuleRef mixed_module() { return make_module("P", {{"p0", 0}, {"p1", 1}}); }

void BM_ComposeRandom(benchmark::State& state) {
  std::mt19937_64 rng(0x6a7f);
  const Object p{mixed_module()};
  const IndexBounds b{4, 12};
  const auto phi = random_family(Category::bi(), Ring::integers(), p, p, 0, b, rng, 0.7, 16);
  const auto psi = random_family(Category::bi(), Ring::integers(), p, p, 0, b, rng, 0.7, 16);
  for (auto _ : state) benchmark::DoNotOptimize(compose(psi, phi, mode(state)));
}

void BM_CheckMorseObject(benchmark::State& state) {
  const auto alpha = morse_fbialgebra(register_semigroup(cyclic_group(3)), Ring::integers(), IndexBounds{4, 16});
  for (auto _ : state) benchmark::DoNotOptimize(check_fbialgebra(alpha, mode(state)));
}

void BM_CheckCircle(benchmark::State& state) {
  const auto alpha = strict_fbialgebra(circle_core(Ring::integers()), IndexBounds{3, 6});
  for (auto _ : state) benchmark::DoNotOptimize(check_fbialgebra(alpha, mode(state)));
}

void BM_DdZeroSweep(benchmark::State& state) {
  const auto domain = dd_zero_domain(3, 3, 4);
  for (auto _ : state) {
    std::vector<DdZeroReport> out(domain.size());
    for_each_index(domain.size(), mode(state), [&](std::size_t i) { out[i] = check_dd_zero(domain[i]); });
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_ComposeRandom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckMorseObject)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckCircle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DdZeroSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

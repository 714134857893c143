// Serial reference vs OpenMP-parallel convergence and decomposition studies.

#include <benchmark/benchmark.h>

#include <vector>

#include "rkgl/convergence.hpp"

using namespace rkgl;

namespace {

std::vector<std::size_t> doubling_ns(std::size_t top) {
  std::vector<std::size_t> ns;
  for (std::size_t n = 4; n <= top; n *= 2) ns.push_back(n);
  return ns;
}

template <Execution E>
void BM_Convergence(benchmark::State& state) {
  const ODEProblem p = builtin("riccati");
  const auto ns = doubling_ns(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convergence_study(p, Method::RKGL, ns, E));
}

template <Execution E>
void BM_Decomposition(benchmark::State& state) {
  const ODEProblem p = builtin("riccati");
  const auto ns = doubling_ns(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decomposition_study(p, ns, E));
}

}  // namespace

BENCHMARK(BM_Convergence<Execution::Serial>)->RangeMultiplier(8)->Range(64, 1 << 15);
BENCHMARK(BM_Convergence<Execution::Parallel>)->RangeMultiplier(8)->Range(64, 1 << 15);
BENCHMARK(BM_Decomposition<Execution::Serial>)->RangeMultiplier(8)->Range(64, 1 << 15);
BENCHMARK(BM_Decomposition<Execution::Parallel>)->RangeMultiplier(8)->Range(64, 1 << 15);

BENCHMARK_MAIN();

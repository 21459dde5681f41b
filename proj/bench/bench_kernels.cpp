#include <benchmark/benchmark.h>

#include "drbcp/generators.hpp"
#include "drbcp/uncertainty.hpp"

using namespace drbcp;

namespace {

const GeneratedInstance& instance() {
  static const GeneratedInstance gen = [] {
    MultihopParams p;
    p.N = 100;
    p.seed = 1;
    return gen_multihop(p);
  }();
  return gen;
}

void robust_values(benchmark::State& state, Execution exec) {
  const auto& gen = instance();
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(robust_scenario_values(gen.system, gen.scenarios, 0.1, r, Sense::capacity, exec));
}

void bottlenecks(benchmark::State& state, Execution exec) {
  const auto& gen = instance();
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_values(gen.system, gen.scenarios, Sense::capacity, exec));
}

}  // namespace

BENCHMARK_CAPTURE(robust_values, serial, Execution::serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(robust_values, parallel, Execution::parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bottlenecks, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bottlenecks, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

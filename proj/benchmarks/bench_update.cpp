// Update-throughput benchmarks: replay identical seeded streams through the
// exact-counter engine and the degree-class engine.

#include <benchmark/benchmark.h>

#include "dynmis/delta_engine.hpp"
#include "dynmis/sublinear_engine.hpp"
#include "dynmis/workload.hpp"

namespace {

dynmis::Stream make_stream(std::size_t n, std::size_t steps) {
  return dynmis::gen_random(n, steps, 0.5, /*seed=*/42);
}

void BM_DeltaEngine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto steps = static_cast<std::size_t>(state.range(1));
  const dynmis::Stream s = make_stream(n, steps);
  for (auto _ : state) {
    dynmis::DeltaEngine eng(s.n, s.n - 1);
    for (const auto& ev : s.events) benchmark::DoNotOptimize(eng.apply(ev));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(s.events.size()));
}

void BM_SublinearEngine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto steps = static_cast<std::size_t>(state.range(1));
  const dynmis::Stream s = make_stream(n, steps);
  for (auto _ : state) {
    dynmis::SublinearEngine eng(s.n);
    for (const auto& ev : s.events) benchmark::DoNotOptimize(eng.apply(ev));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(s.events.size()));
}

void BM_SlidingWindowSublinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const dynmis::Stream s =
      dynmis::gen_sliding_window(n, 4 * n, /*window=*/2 * n, /*seed=*/7);
  for (auto _ : state) {
    dynmis::SublinearEngine eng(s.n);
    for (const auto& ev : s.events) benchmark::DoNotOptimize(eng.apply(ev));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(s.events.size()));
}

BENCHMARK(BM_DeltaEngine)->Args({64, 1000})->Args({256, 5000})->Args({512, 20000});
BENCHMARK(BM_SublinearEngine)->Args({64, 1000})->Args({256, 5000})->Args({512, 20000});
BENCHMARK(BM_SlidingWindowSublinear)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "proclang/explore.hpp"
#include "proclang/syntax.hpp"

namespace {

using namespace proclang;

// n messages routed through two relays into a two-atom join; the
// interleavings give a state space that grows quickly with n.
Process workload(int n) {
  std::string text = "!(n(x) >> m<x>) | !(n(x) >> k<x>) | !((m(x) | k(y)) >> ok)";
  for (int i = 0; i < n; ++i) text += " | n<a" + std::to_string(i) + ">";
  return parse_process(text);
}

const FeatureVector kLang = FeatureVector::parse("L[A,M,C,NO,J]");

void BM_ExploreSerial(benchmark::State& state) {
  const Process p = workload(static_cast<int>(state.range(0)));
  std::size_t states = 0;
  for (auto _ : state) {
    const StateGraph g = explore_serial(p, kLang);
    states = g.states.size();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}

void BM_ExploreParallel(benchmark::State& state) {
  const Process p = workload(static_cast<int>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  std::size_t states = 0;
  for (auto _ : state) {
    const StateGraph g = explore_parallel(p, kLang, {}, jobs);
    states = g.states.size();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}

}  // namespace

BENCHMARK(BM_ExploreSerial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreParallel)->Args({2, 2})->Args({3, 2})->Args({4, 2})->Args({4, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

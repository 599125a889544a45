#include <benchmark/benchmark.h>

#include "unfsum/benchgen.hpp"
#include "unfsum/errors.hpp"
#include "unfsum/pipeline.hpp"

using namespace unfsum;

namespace {

// Unfold, fold and minimise one benchmark system.
void summarize_family(benchmark::State& state, benchgen::Family family) {
  Product p = parse_system(benchgen::generate(family, static_cast<int>(state.range(0))));
  std::size_t events = 0, states = 0;
  for (auto _ : state) {
    SummarizeResult r = summarize(p, {});
    events = r.stats.events;
    states = r.stats.summary_states;
    benchmark::DoNotOptimize(r);
  }
  state.counters["events"] = static_cast<double>(events);
  state.counters["summary_states"] = static_cast<double>(states);
}

// Explicit reachable-state count, for comparison with the unfolding.
void explore_family(benchmark::State& state, benchgen::Family family) {
  Product p = parse_system(benchgen::generate(family, static_cast<int>(state.range(0))));
  std::size_t markings = 0;
  for (auto _ : state) {
    markings = oracle::explore(p, oracle::kDefaultStateBound, false).size();
    benchmark::DoNotOptimize(markings);
  }
  state.counters["markings"] = static_cast<double>(markings);
}

void verify_random(benchmark::State& state) {
  std::uint64_t seed = 0;
  VerifyOptions o;
  o.summarize.divergence = true;
  for (auto _ : state) {
    Product p = benchgen::random_system(seed++);
    benchmark::DoNotOptimize(verify(p, o));
  }
}

void parse_serialize(benchmark::State& state) {
  std::string text = benchgen::generate(benchgen::Family::Dpd, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serialize_system(parse_system(text)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

}  // namespace

BENCHMARK_CAPTURE(summarize_family, CyclicC, benchgen::Family::CyclicC)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, CyclicS, benchgen::Family::CyclicS)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, Dac, benchgen::Family::Dac)->Arg(9)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, Dp, benchgen::Family::Dp)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, Dpd, benchgen::Family::Dpd)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, Dpsyn, benchgen::Family::Dpsyn)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(summarize_family, Ring, benchgen::Family::Ring)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(explore_family, Dp, benchgen::Family::Dp)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(explore_family, Dac, benchgen::Family::Dac)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(verify_random)->Unit(benchmark::kMicrosecond);
BENCHMARK(parse_serialize)->Arg(4)->Arg(16);

BENCHMARK_MAIN();

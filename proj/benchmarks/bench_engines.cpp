// Engine throughput over the shipped families. Counters are attached so the
// JSON output carries I and N alongside the timings.

#include <benchmark/benchmark.h>

#include "inet/backend.hpp"
#include "inet/driver.hpp"
#include "inet/families.hpp"

namespace {

using inet::Engine;
using inet::Family;

void run_family(benchmark::State& state, Family f, std::vector<int> params, Engine e,
                bool optimize) {
  const inet::SourceProgram p = inet::parse_source(inet::family_source(f, params));
  inet::RunOptions opts;
  opts.engine = e;
  opts.optimize = optimize;
  inet::RunOutcome last;
  for (auto _ : state) {
    last = inet::run_program(p, opts);
    benchmark::DoNotOptimize(last.interface.data());
  }
  state.counters["I"] = static_cast<double>(last.counters.interactions);
  state.counters["N"] = static_cast<double>(last.counters.name_ops);
  state.counters["interactions/s"] = benchmark::Counter(
      static_cast<double>(last.counters.interactions) * static_cast<double>(state.iterations()),
      benchmark::Counter::kIsRate);
  if (last.vm) state.counters["allocs"] = static_cast<double>(last.vm->allocs);
}

void BM_Compile(benchmark::State& state) {
  const inet::SourceProgram p = inet::parse_source(inet::family_source(Family::fib, {15}));
  for (auto _ : state) {
    auto ll0 = inet::compile_source(p, state.range(0) != 0);
    benchmark::DoNotOptimize(ll0.procedures.data());
  }
}
BENCHMARK(BM_Compile)->Arg(0)->Arg(1);

void BM_EmitC(benchmark::State& state) {
  const auto ll0 = inet::compile_source(
      inet::parse_source(inet::family_source(Family::ack, {2, 3})), false);
  for (auto _ : state) {
    auto unit = inet::emit_backend(ll0);
    benchmark::DoNotOptimize(unit.source.data());
  }
}
BENCHMARK(BM_EmitC);

// fib(20) on the calculus engines takes seconds per iteration; they stop at
// fib(15).
void register_all() {
  struct Case {
    Family family;
    std::vector<int> params;
    bool calculus;
  };
  const std::vector<Case> cases = {
      {Family::add, {50, 100}, true},  {Family::add, {500, 1000}, false},
      {Family::fib, {10}, true},       {Family::fib, {15}, true},
      {Family::fib, {20}, false},      {Family::ack, {2, 3}, true},
      {Family::ack, {3, 4}, false},    {Family::church, {3, 3}, true},
      {Family::church, {4, 4}, false},
  };
  for (const auto& c : cases) {
    for (Engine e : inet::all_engines()) {
      if (!c.calculus && e != Engine::vm) continue;
      const std::string label = inet::family_label(c.family, c.params);
      benchmark::RegisterBenchmark(
          ("BM_Run/" + std::string(inet::to_string(e)) + "/" + label).c_str(),
          [c, e](benchmark::State& s) { run_family(s, c.family, c.params, e, false); })
          ->Unit(benchmark::kMicrosecond);
      if (e == Engine::vm) {
        benchmark::RegisterBenchmark(("BM_Run/vm-opt/" + label).c_str(),
                                     [c](benchmark::State& s) {
                                       run_family(s, c.family, c.params, Engine::vm, true);
                                     })
            ->Unit(benchmark::kMicrosecond);
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_all();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

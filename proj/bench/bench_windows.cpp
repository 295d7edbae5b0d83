// Serial reference vs OpenMP kernels on a long generated trace.

#include <benchmark/benchmark.h>

#include "qoekit/composite.hpp"
#include "qoekit/report.hpp"
#include "qoekit/trace.hpp"

namespace {

const qoekit::trace::Trace& long_trace() {
  static const auto t = [] {
    qoekit::trace::ImpairmentSpec spec;
    spec.loss_prob = 0.02;
    spec.base_delay_ms = 120;
    spec.jitter.kind = qoekit::trace::JitterModel::Kind::pareto;
    spec.jitter.shape = 0.7;
    spec.jitter.scale_ms = 4;
    spec.duration_s = 3600;
    spec.rng_seed = 1;
    return qoekit::trace::generate(spec);
  }();
  return t;
}

qoekit::trace::WindowOptions opts(benchmark::State& state) {
  qoekit::trace::WindowOptions o;
  o.window_len_s = static_cast<double>(state.range(0));
  return o;
}

void BM_WindowsSerial(benchmark::State& state) {
  const auto& t = long_trace();
  const auto o = opts(state);
  for (auto _ : state) benchmark::DoNotOptimize(qoekit::trace::windows_serial(t, o));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(t.packets.size()));
}

void BM_WindowsParallel(benchmark::State& state) {
  const auto& t = long_trace();
  const auto o = opts(state);
  for (auto _ : state) benchmark::DoNotOptimize(qoekit::trace::windows(t, o));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(t.packets.size()));
}

BENCHMARK(BM_WindowsSerial)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowsParallel)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_AnalyzeSerial(benchmark::State& state) {
  const auto& t = long_trace();
  const auto reg = qoekit::composite::ModelRegistry::with_builtins();
  qoekit::report::AnalyzeOptions o;
  o.windows = opts(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qoekit::report::analyze_serial(t, reg.get("paper-5g-ahp"), qoekit::emodel::g729(), o));
  }
}

void BM_AnalyzeParallel(benchmark::State& state) {
  const auto& t = long_trace();
  const auto reg = qoekit::composite::ModelRegistry::with_builtins();
  qoekit::report::AnalyzeOptions o;
  o.windows = opts(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qoekit::report::analyze(t, reg.get("paper-5g-ahp"), qoekit::emodel::g729(), o));
  }
}

BENCHMARK(BM_AnalyzeSerial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

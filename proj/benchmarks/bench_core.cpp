#include <benchmark/benchmark.h>

#include "rsl/asymptotics.hpp"
#include "rsl/energy.hpp"
#include "rsl/monte_carlo.hpp"
#include "rsl/oracle.hpp"

namespace {

void BM_RnnEnergyRational(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::rnn_energy({64, k}, rsl::EvalMode::kRational));
  }
}
BENCHMARK(BM_RnnEnergyRational)->Arg(16)->Arg(128)->Arg(1024);

void BM_RnnEnergyLogFloat(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::rnn_energy({64, k}, rsl::EvalMode::kLogFloat));
  }
}
BENCHMARK(BM_RnnEnergyLogFloat)->Arg(16)->Arg(128)->Arg(1024);

void BM_LruEnergyLogFloat(benchmark::State& state) {
  const long t = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::lru_energy({1000000, t}, rsl::EvalMode::kLogFloat));
  }
}
BENCHMARK(BM_LruEnergyLogFloat)->Arg(1000)->Arg(10000);

void BM_TraceMomentOracle(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::trace_moment(6, k, 8));
  }
}
BENCHMARK(BM_TraceMomentOracle)->DenseRange(4, 8);

void BM_CriticalProfileIntegral(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::critical_profile_integral(c));
  }
}
BENCHMARK(BM_CriticalProfileIntegral)->Arg(1)->Arg(4)->Arg(8);

void BM_SimulateComplex(benchmark::State& state) {
  const long n = state.range(0);
  rsl::McConfig cfg;
  cfg.n = n;
  cfg.t_max = 16;
  cfg.samples = 64;
  cfg.seed = 1;
  cfg.model = rsl::ModelKind::kLru;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::simulate_energies(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_SimulateComplex)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

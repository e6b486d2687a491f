#include <benchmark/benchmark.h>

#include <complex>

#include "thetastate/moments.hpp"
#include "thetastate/oracle.hpp"
#include "thetastate/state_model.hpp"
#include "thetastate/theta_engine.hpp"

using namespace thetastate;

static void BM_Theta3(benchmark::State& state) {
  const double q = state.range(0) / 100.0;
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta3({x, 0.2}, q));
    x += 1e-3;
  }
}
BENCHMARK(BM_Theta3)->ArgNames({"q_percent"})->Arg(4)->Arg(50)->Arg(90)->Arg(99);

static void BM_Psi(benchmark::State& state) {
  const State s({state.range(0) / 100.0, 0.45, 0.3});
  double t = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(s, t));
    t += 1e-4;
  }
}
BENCHMARK(BM_Psi)->ArgNames({"lambda_x100"})->Arg(5)->Arg(16)->Arg(100)->Arg(2000);

static void BM_UncertaintyReport(benchmark::State& state) {
  const State s({state.range(0) / 100.0, 0.45});
  for (auto _ : state) {
    benchmark::DoNotOptimize(uncertainty_report(s));
  }
}
BENCHMARK(BM_UncertaintyReport)->ArgNames({"lambda_x100"})->Arg(5)->Arg(100)->Arg(2000)->Arg(100000);

static void BM_OracleCompare(benchmark::State& state) {
  const State s({state.range(0) / 100.0, 0.45, 0.3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare(s));
  }
}
BENCHMARK(BM_OracleCompare)->ArgNames({"lambda_x100"})->Arg(5)->Arg(100)->Arg(2000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

// Serial reference vs OpenMP path for the data-parallel kernels.
// Arg 0 = Exec::serial, 1 = Exec::parallel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "ouembed/calderon.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/ridge.hpp"

using namespace ouembed;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel, " + std::to_string(worker_count()) + " threads");
}

void BM_ApplyS(benchmark::State& state) {
  const auto g = StepFunction::sample([](double s) { return 1.0 / std::sqrt(s); }, default_grid(1024));
  for (auto _ : state) benchmark::DoNotOptimize(apply_S_steps(g, 2048, 1e-14, mode(state)));
  label(state);
}

void BM_RatioScan(benchmark::State& state) {
  const auto op = s_operator(1024);
  const auto x = make_lz(2, 2, 0, 0), y = make_lz(2, 2, 1, 0);
  const auto sizes = dyadic_sizes(2, 40);
  for (auto _ : state) benchmark::DoNotOptimize(operator_ratio_scan(op, x, y, Family::indicator, sizes, {}, mode(state)));
  label(state);
}

void BM_RidgeBatch(benchmark::State& state) {
  std::vector<double> deltas;
  for (int k = 3; k <= 30; k += 3) deltas.push_back(std::ldexp(1.0, -k));
  RidgeOptions opt;
  opt.cells = 1024;
  for (auto _ : state) benchmark::DoNotOptimize(check_estimates_batch(deltas, opt, state.range(0) != 0));
  label(state);
}

void BM_GaugeTable(benchmark::State& state) {
  const auto a = young::power(2.0);
  const Weight w = canonical_weight();
  for (auto _ : state) benchmark::DoNotOptimize(build_G_omega(a, w, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_ApplyS)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RatioScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RidgeBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaugeTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

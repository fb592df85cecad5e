#include <benchmark/benchmark.h>

#include <cmath>

#include "amalgam/kdvb.hpp"
#include "amalgam/modulation.hpp"
#include "amalgam/norms.hpp"
#include "amalgam/witness.hpp"

using namespace amalgam;

static void BM_AmalgamNormPhi(benchmark::State& state) {
  const auto phi = make_phi_N(static_cast<int>(state.range(0)));
  const AmalgamParams params{2.0, 2.0, -1.5};
  for (auto _ : state) benchmark::DoNotOptimize(amalgam_norm(phi, params));
}
BENCHMARK(BM_AmalgamNormPhi)->Arg(16)->Arg(1024);

static void BM_ModulationNormPhi(benchmark::State& state) {
  const auto phi = make_phi_N(static_cast<int>(state.range(0)));
  const auto windows = build_partition();
  const AmalgamParams params{2.0, 2.0, -1.5};
  for (auto _ : state) benchmark::DoNotOptimize(modulation_norm(phi, params, windows));
}
BENCHMARK(BM_ModulationNormPhi)->Arg(16)->Arg(1024);

static void BM_SampledAmalgamNorm(benchmark::State& state) {
  const FrequencyGrid grid(-20.0, 20.0, static_cast<std::size_t>(state.range(0)));
  const auto f = sample(make_phi_N(8), grid);
  const AmalgamParams params{2.0, 2.0, -1.0};
  for (auto _ : state) benchmark::DoNotOptimize(amalgam_norm(f, params));
}
BENCHMARK(BM_SampledAmalgamNorm)->Arg(801)->Arg(8001);

static void BM_LowerBoundIntegral(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_integral(0.25, N, 0.5));
}
BENCHMARK(BM_LowerBoundIntegral)->Arg(16)->Arg(1024);

static void BM_A2BoxNorm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a2_box_norm(N, 0.5, 2.0));
}
BENCHMARK(BM_A2BoxNorm)->Arg(16)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SecondIterateClosedForm(benchmark::State& state) {
  const auto phi = make_phi_N(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(second_iterate_closed_form(phi, 0.5, 0.3));
}
BENCHMARK(BM_SecondIterateClosedForm)->Arg(4)->Arg(64);

static void BM_SecondIterateOracle(benchmark::State& state) {
  const auto phi = make_phi_N(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(second_iterate_oracle(phi, 0.5, 0.3));
}
BENCHMARK(BM_SecondIterateOracle)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_TimeKernel(benchmark::State& state) {
  const Complex z(-18.0, 162.0);
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_kernel(z, t));
    t = t == 0.5 ? 0.25 : 0.5;
  }
}
BENCHMARK(BM_TimeKernel);

static void BM_PicardSecondIterate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const double d = 2.0 / (2.0 * m + 1.0);
  const long k = static_cast<long>(std::ceil(6.5 / d));
  const FrequencyGrid grid(-k * d, k * d, static_cast<std::size_t>(2 * k + 1));
  const auto phi = make_phi_N(1);
  for (auto _ : state) benchmark::DoNotOptimize(picard_iterate(phi, 2, PicardConfig{0.1, grid, 64}));
}
BENCHMARK(BM_PicardSecondIterate)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

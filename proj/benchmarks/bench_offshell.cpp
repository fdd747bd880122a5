#include <benchmark/benchmark.h>

#include "offshell/bessel.hpp"
#include "offshell/fields.hpp"
#include "offshell/greens.hpp"
#include "offshell/kgroute.hpp"
#include "offshell/oracle.hpp"

using namespace offshell;

static void BM_EvalCanonical(benchmark::State& st) {
  const Event5 e(2, 1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(eval_canonical(e));
}
BENCHMARK(BM_EvalCanonical);

static void BM_EvalK5Route(benchmark::State& st) {
  const Event5 e(2, 1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(eval_k5_route(e));
}
BENCHMARK(BM_EvalK5Route);

static void BM_BesselJ0(benchmark::State& st) {
  double x = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x = x < 50 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ0);

static void BM_IQuadrature(benchmark::State& st) {
  QuadSpec q;
  for (auto _ : st) benchmark::DoNotOptimize(i_quadrature(2.0, 1.0, q).value);
}
BENCHMARK(BM_IQuadrature);

static void BM_PairCanonical(benchmark::State& st) {
  QuadSpec q;
  const auto phi = TestFunction::gaussian(Event5(2, 0, 1), 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(pair_canonical(phi, q).value);
}
BENCHMARK(BM_PairCanonical)->Unit(benchmark::kMillisecond);

static void BM_K0Quadrature(benchmark::State& st) {
  QuadSpec q;
  for (auto _ : st) benchmark::DoNotOptimize(k0_principal_quadrature(1.0, 0.5, 1.3, q).value);
}
BENCHMARK(BM_K0Quadrature)->Unit(benchmark::kMicrosecond);

static void BM_ConvolveEven(benchmark::State& st) {
  CurrentModel j;
  QuadSpec q;
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto g = GridSpec::around(j, n, 4.0 / static_cast<double>(n));
  for (auto _ : st) benchmark::DoNotOptimize(convolve(j, g, q, KernelSpec{KernelKind::Even, 0.5}).values.data());
}
BENCHMARK(BM_ConvolveEven)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

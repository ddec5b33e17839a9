#include <benchmark/benchmark.h>

#include <vector>

#include "hypenergy/energies.hpp"
#include "hypenergy/incidence.hpp"
#include "hypenergy/kloosterman.hpp"
#include "hypenergy/sl2.hpp"
#include "hypenergy/spectral.hpp"

using namespace hypenergy;

static void BM_CountHyperbola(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::int64_t>(state.range(0)));
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const auto a = random_subset(ctx, n, 1), b = random_subset(ctx, n, 2);
  const auto c = random_subset(ctx, n, 3), d = random_subset(ctx, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(count_hyperbola(a, b, c, d, 1));
}
BENCHMARK(BM_CountHyperbola)->Args({401, 20})->Args({2003, 200})->Args({65521, 2000});

static void BM_MultiplicativeEnergy(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::int64_t>(state.range(0)));
  const auto a = interval(ctx, 1, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(multiplicative_energy(a, a));
}
BENCHMARK(BM_MultiplicativeEnergy)->Args({1009, 100})->Args({65521, 1000});

static void BM_AdditiveEnergySpectral(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::int64_t>(state.range(0)));
  const auto a = random_subset(ctx, ctx->p() / 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(additive_energy_spectral(a, a));
}
BENCHMARK(BM_AdditiveEnergySpectral)->Arg(401)->Arg(2003);

static void BM_Dft(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::int64_t>(state.range(0)));
  const auto f = WeightFn::indicator(random_subset(ctx, ctx->p() / 2, 6));
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
}
BENCHMARK(BM_Dft)->Arg(101)->Arg(1009)->Arg(4001);

static void BM_TkGroup(benchmark::State& state) {
  const auto ctx = make_context(101);
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const auto g = g_lambda_set(random_subset(ctx, n, 7), random_subset(ctx, n, 8), 1);
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_k_group(g, k));
}
BENCHMARK(BM_TkGroup)->Args({2, 10})->Args({3, 6})->Args({4, 4});

static void BM_IntegerModeT4(benchmark::State& state) {
  std::vector<std::int64_t> iv;
  for (std::int64_t i = 1; i <= state.range(0); ++i) iv.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(t_2k_integer_mode(iv, iv, 1, 2).value);
}
BENCHMARK(BM_IntegerModeT4)->Arg(4)->Arg(8);

static void BM_KloostermanTable(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(KloostermanTable(ctx).max_imaginary());
}
BENCHMARK(BM_KloostermanTable)->Arg(101)->Arg(1009);

static void BM_BilinearForm(benchmark::State& state) {
  const auto ctx = make_context(1009);
  const auto a = WeightFn::indicator(interval(ctx, 1, 31));
  const auto b = WeightFn::indicator(interval(ctx, 505, 31));
  const KloostermanTable table(ctx);
  const auto method = state.range(0) == 0 ? FormMethod::Direct : FormMethod::Spectral;
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_form(a, b, method, &table));
}
BENCHMARK(BM_BilinearForm)->Arg(0)->Arg(1);

static void BM_FreeGroupCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(free_group_check(2, 2, 6, 3).words_checked);
}
BENCHMARK(BM_FreeGroupCheck);
BENCHMARK_MAIN();

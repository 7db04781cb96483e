#include <benchmark/benchmark.h>

#include <cmath>

#include "copoun/estimation.hpp"
#include "copoun/inflated.hpp"
#include "copoun/pcd.hpp"
#include "copoun/regression.hpp"

using namespace copoun;

namespace {

FrequencyTable los_table() {
  const std::int64_t c[] = {45, 35, 35, 47, 40, 20, 13, 8, 4, 5, 3, 1, 4, 0, 1};
  std::vector<FrequencyEntry> e;
  for (int i = 0; i < 15; ++i) e.push_back({i, c[i]});
  return FrequencyTable(e);
}

RegressionData synthetic(std::size_t n) {
  Rng rng(42);
  std::vector<std::int64_t> y(n);
  std::vector<std::vector<double>> x(2, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    x[0][i] = rng.normal();
    x[1][i] = rng.uniform();
    const double mu = std::exp(0.5 - 0.3 * x[0][i] + 0.8 * x[1][i]);
    y[i] = pcd_draw(to_natural(MeanParams(mu, 1.0)), rng);
  }
  return make_regression_data(std::move(y), x, {"x1", "x2"});
}

}  // namespace

static void BM_PcdLogPmf(benchmark::State& state) {
  const PcdParams p(1.0, 1.0);
  std::int64_t x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcd_log_pmf(p, x));
    x = (x + 1) & 63;
  }
}
BENCHMARK(BM_PcdLogPmf);

static void BM_PcdSample(benchmark::State& state) {
  const PcdParams p(1.0, 1.0);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(pcd_sample(p, rng, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PcdSample)->Arg(1000)->Arg(100000);

static void BM_PcdMle(benchmark::State& state) {
  Rng rng(2);
  const auto table = FrequencyTable::from_sample(pcd_sample(PcdParams(1.0, 1.0), rng, 5000));
  for (auto _ : state) benchmark::DoNotOptimize(mle_fit(table));
}
BENCHMARK(BM_PcdMle)->Unit(benchmark::kMillisecond);

static void BM_ThipcdMleLos(benchmark::State& state) {
  const auto table = los_table();
  for (auto _ : state) benchmark::DoNotOptimize(thipcd_mle(table));
}
BENCHMARK(BM_ThipcdMleLos)->Unit(benchmark::kMillisecond);

static void BM_PcdRegression(benchmark::State& state) {
  const auto data = synthetic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcd_regression_fit(data));
}
BENCHMARK(BM_PcdRegression)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

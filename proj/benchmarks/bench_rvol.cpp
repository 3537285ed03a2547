#include <benchmark/benchmark.h>

#include <vector>

#include "rvol/huber.hpp"
#include "rvol/predictors.hpp"
#include "rvol/proxies.hpp"
#include "rvol/rng.hpp"

using namespace rvol;

namespace {

ReturnSeries gaussian_series(int n) {
  Rng rng(1);
  ReturnSeries r;
  r.values.resize(n);
  for (auto& x : r.values) x = 0.01 * rng.normal();
  return r;
}

void BM_tuning_free_fit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<double> sq(n);
  for (auto& d : sq) {
    const double x = rng.normal();
    d = x * x;
  }
  const DecayWeights w = make_weights(0.95, n - 1, Direction::Forward);
  const double z = std::log(w.n_eff);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tuning_free_fit(sq, w, z));
  }
}
BENCHMARK(BM_tuning_free_fit)->Arg(15)->Arg(60)->Arg(500);

void BM_ewma_predictor(benchmark::State& state) {
  const ReturnSeries r = gaussian_series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewma_predictor(r, 0.9517, 28));
  }
}
BENCHMARK(BM_ewma_predictor)->Arg(1000)->Arg(10000);

void BM_huber_predictor(benchmark::State& state) {
  const ReturnSeries r = gaussian_series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(huber_predictor(r, 0.9517, 28, 3.0));
  }
}
BENCHMARK(BM_huber_predictor)->Arg(1000)->Arg(10000);

void BM_huber_proxy(benchmark::State& state) {
  const ReturnSeries r = gaussian_series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        huber_proxy(r, 0.9057, 14, 4.0, r.size() - 14.0));
  }
}
BENCHMARK(BM_huber_proxy)->Arg(1000)->Arg(10000);

}  // namespace

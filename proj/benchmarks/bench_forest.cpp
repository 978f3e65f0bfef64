#include <benchmark/benchmark.h>

#include <random>

#include "topicfilter/forest.hpp"

namespace {

using namespace topicfilter;

void BM_TrainForest(benchmark::State& state) {
  const std::size_t rows = 1000, features = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(rows, features);
  std::vector<std::size_t> y(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    y[i] = i % 6;
    for (std::size_t f = 0; f < features; ++f) x(i, f) = u(rng);
    x(i, y[i] % features) += 0.5;
  }
  ForestOptions o;
  o.trees = 100;
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(x, y, o));
}
BENCHMARK(BM_TrainForest)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

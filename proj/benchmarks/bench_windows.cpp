#include <benchmark/benchmark.h>

#include "topicfilter/synthetic.hpp"
#include "topicfilter/windows.hpp"

namespace {

void BM_ExtractWindows(benchmark::State& state) {
  topicfilter::PlantedTopicOptions o;
  o.documents = static_cast<std::size_t>(state.range(0));
  o.vocabulary = 2000;
  const auto corpus = topicfilter::generate_planted_topics(o).corpus;
  for (auto _ : state) {
    benchmark::DoNotOptimize(topicfilter::extract_windows(corpus, 5));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.total_tokens()));
}
BENCHMARK(BM_ExtractWindows)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include "topicfilter/lda.hpp"
#include "topicfilter/synthetic.hpp"

namespace {

using namespace topicfilter;

void BM_GibbsSweep(benchmark::State& state) {
  PlantedTopicOptions p;
  p.documents = 500;
  p.vocabulary = 1000;
  const auto corpus = generate_planted_topics(p).corpus;
  LdaOptions o;
  o.topics = static_cast<std::size_t>(state.range(0));
  GibbsSampler sampler(corpus, o);
  for (auto _ : state) sampler.sweep();
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.total_tokens()));
}
BENCHMARK(BM_GibbsSweep)->Arg(12)->Arg(60)->Arg(180)->Unit(benchmark::kMillisecond);

}  // namespace

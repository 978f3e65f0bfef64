#include <benchmark/benchmark.h>

#include <random>

#include "topicfilter/scoring.hpp"
#include "topicfilter/synthetic.hpp"

namespace {

using namespace topicfilter;

void BM_PalWord(benchmark::State& state) {
  PlantedTopicOptions o;
  o.documents = 1000;
  o.vocabulary = 2000;
  const auto corpus = generate_planted_topics(o).corpus;
  const auto windows = extract_windows(corpus, 5);
  WordId w = 0;
  const auto V = static_cast<WordId>(corpus.vocabulary().size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(pal_word(w, windows));
    w = (w + 1) % V;
  }
}
BENCHMARK(BM_PalWord);

void BM_Coherence(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  EmbeddingTable e(100, NormPolicy::Unit);
  RidfMap ridf;
  std::vector<std::string> words;
  for (std::size_t i = 0; i < K; ++i) {
    std::vector<double> v(100);
    for (auto& x : v) x = g(rng);
    words.push_back("w" + std::to_string(i));
    e.set(words.back(), v);
    ridf[words.back()] = g(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(coherence(words, e, ridf));
}
BENCHMARK(BM_Coherence)->Arg(10)->Arg(25)->Arg(50);

}  // namespace

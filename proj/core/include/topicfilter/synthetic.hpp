#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "topicfilter/corpus.hpp"
#include "topicfilter/matrix.hpp"

namespace topicfilter {

/// Planted-category text collection. Every category owns a few themes, each
/// a small vocabulary emitted in short phrases; all documents also draw
/// single words from a shared Zipf-distributed background vocabulary. Each
/// document carries one unique name-like word and a sprinkling of stopwords
/// and punctuation.
struct ToyCorpusOptions {
  std::size_t categories = 3;
  std::size_t docs_per_category = 100;
  std::size_t themes_per_category = 3;
  std::size_t words_per_theme = 20;
  std::size_t background_words = 200;
  std::size_t min_length = 60;
  std::size_t max_length = 120;
  /// Probability that an emission step produces a theme phrase rather than
  /// a background word.
  double phrase_rate = 0.3;
  std::uint64_t seed = 1;
};

struct ToyRecord {
  std::string id;
  std::string label;
  std::string text;
};

std::vector<ToyRecord> generate_toy_corpus(const ToyCorpusOptions& options);

/// One JSON object per line with "id", "label" and "text" fields.
std::string to_json_lines(const std::vector<ToyRecord>& records);

/// Documents sampled from the LDA generative process with known topics.
struct PlantedTopics {
  Corpus corpus;
  /// topics x V, columns in corpus vocabulary id order.
  Matrix topic_word;
};

struct PlantedTopicOptions {
  std::size_t topics = 5;
  std::size_t documents = 500;
  std::size_t vocabulary = 100;
  std::size_t doc_length = 100;
  double alpha = 0.2;
  double beta = 0.1;
  std::uint64_t seed = 1;
};

PlantedTopics generate_planted_topics(const PlantedTopicOptions& options);

/// Greedy one-to-one matching of learned rows to planted rows by cosine
/// similarity (best remaining pair first); returns the mean matched cosine.
double greedy_matched_cosine(const Matrix& learned, const Matrix& planted);

}  // namespace topicfilter

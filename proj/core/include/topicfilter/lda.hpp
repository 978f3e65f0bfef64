#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "topicfilter/corpus.hpp"
#include "topicfilter/matrix.hpp"

namespace topicfilter {

struct LdaOptions {
  std::size_t topics = 0;
  /// Document-topic smoothing; a negative value selects 50 / topics.
  double alpha = -1.0;
  double beta = 0.01;
  std::size_t sweeps = 1000;
  std::uint64_t seed = 1;

  double resolved_alpha() const noexcept {
    return alpha < 0.0 ? 50.0 / static_cast<double>(topics) : alpha;
  }
};

/// Sweep count from the "fraction of the collection length" rule: max(1,
/// round(fraction * documents)). Not used unless requested.
std::size_t sweeps_for_collection(std::size_t documents, double fraction = 0.2);

/// A trained LDA model. Rows of both matrices are probability vectors.
struct TopicModel {
  std::size_t topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t sweeps = 0;
  Vocabulary vocabulary;
  Matrix topic_word;  ///< topics x V
  Matrix doc_topic;   ///< N x topics
  std::uint64_t corpus_fingerprint = 0;

  std::size_t vocabulary_size() const noexcept { return topic_word.cols(); }

  bool operator==(const TopicModel&) const = default;
};

/// Collapsed Gibbs sampler state for one corpus. Single writer.
class GibbsSampler {
 public:
  GibbsSampler(const Corpus& corpus, const LdaOptions& options);

  void sweep();
  std::size_t sweeps_done() const noexcept { return sweeps_done_; }

  /// Per-topic assignment totals; sums to the corpus token count.
  const std::vector<std::uint64_t>& topic_totals() const noexcept { return topic_totals_; }

  /// Smoothed point estimates from the current counts.
  TopicModel snapshot() const;

  /// Average base-2 log-likelihood per training token under the current
  /// smoothed estimates.
  double log_likelihood_per_word() const;

 private:
  const Corpus& corpus_;
  std::size_t K_;
  std::size_t V_;
  double alpha_;
  double beta_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::size_t sweeps_done_ = 0;

  std::vector<std::vector<std::uint32_t>> assignments_;
  std::vector<std::uint32_t> doc_topic_counts_;   // N x K
  std::vector<std::uint32_t> topic_word_counts_;  // K x V
  std::vector<std::uint64_t> topic_totals_;
  std::vector<double> weights_;
};

/// Called after every sweep with (sweep index starting at 1, sampler).
using SweepObserver = std::function<void(std::size_t, const GibbsSampler&)>;

/// Trains an LDA model. Throws InvalidArgument on topics < 2, sweeps < 1, an
/// empty corpus or an empty vocabulary. Deterministic for a given seed.
TopicModel train_lda(const Corpus& corpus, const LdaOptions& options,
                     const SweepObserver& observer = {});

struct RankedWord {
  WordId id;
  std::string word;
  double probability;
};

struct TopicTopWords {
  std::size_t topic_id = 0;
  std::vector<RankedWord> words;

  std::vector<std::string> word_list() const;
};

/// The `count` most probable words of a topic; ties by ascending word id.
TopicTopWords top_words(const TopicModel& model, std::size_t topic_id, std::size_t count = 25);
std::vector<TopicTopWords> all_top_words(const TopicModel& model, std::size_t count = 25);

struct InferenceOptions {
  std::size_t sweeps = 50;
  unsigned workers = 1;
};

/// Fold-in estimate of document-topic proportions for token ids expressed in
/// the model's vocabulary; topic_word stays frozen.
std::vector<double> infer_topics(const TopicModel& model, std::span<const WordId> tokens,
                                 std::size_t sweeps, std::uint64_t seed);

/// Base-2 log-likelihood per held-out token (<= 0). Held-out words are
/// matched to the model vocabulary by spelling; unknown words are dropped.
/// Throws Error when no held-out token is known to the model.
double perplexity(const TopicModel& model, const Corpus& heldout,
                  const InferenceOptions& options = {});

/// Same quantity evaluated on the training corpus with the stored doc_topic.
double training_log_likelihood(const TopicModel& model, const Corpus& corpus);

/// Document-topic features: the stored doc_topic for the training corpus,
/// fold-in inference for any other corpus over the same vocabulary.
/// Throws InvalidArgument on a vocabulary mismatch.
Matrix doc_features(const TopicModel& model, const Corpus& corpus,
                    const InferenceOptions& options = {});

}  // namespace topicfilter

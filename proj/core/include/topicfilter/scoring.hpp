#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicfilter/corpus.hpp"
#include "topicfilter/embeddings.hpp"
#include "topicfilter/lda.hpp"
#include "topicfilter/windows.hpp"

namespace topicfilter {

/// Which ordered count backs the rule support S->(l, r): windows where l
/// precedes r (default), or where r precedes l.
enum class RuleDirection { LeftPrecedesRight, RightPrecedesLeft };

// ---------------------------------------------------------------------------
// Residual IDF

/// IDF minus its Poisson expectation:
///   -log2(df / N) + log2(1 - exp(-cf / N)).
/// Positive for bursty words, near zero for Poisson-distributed ones.
double residual_idf(std::uint64_t df, std::uint64_t cf, std::uint64_t documents);

/// R-IDF of a vocabulary word. Throws InvalidArgument for unknown ids or df = 0.
double ridf(WordId word, const CorpusStats& stats);

// ---------------------------------------------------------------------------
// Prevalent Association Lift

/// S->(l, r) / sqrt(S(l) + S(r)) with supports taken as fractions of all
/// windows. Returns 0 when neither word occurs in any window. Throws
/// InvalidArgument when the table has no windows.
double pal_pair(WordId left, WordId right, const ContextWindows& windows,
                RuleDirection direction = RuleDirection::LeftPrecedesRight);

/// Max of pal_pair(w, c) over co-windowed words c != w; 0 when w occurs in no
/// window. Words outside the co-window set have pal_pair = 0, so this equals
/// the max over the whole vocabulary.
double pal_word(WordId word, const ContextWindows& windows,
                RuleDirection direction = RuleDirection::LeftPrecedesRight);

/// Max of pal_pair(w, c) over an explicit candidate set, skipping c == w.
/// Throws InvalidArgument when `candidates` is empty.
double pal_word(WordId word, const ContextWindows& windows, std::span<const WordId> candidates,
                RuleDirection direction = RuleDirection::LeftPrecedesRight);

// ---------------------------------------------------------------------------
// Topic-level scores

using RidfMap = std::unordered_map<std::string, double>;

/// R-IDF-weighted mean pairwise cosine over the K(K-1) ordered pairs of
/// distinct positions, with weight max(ridf_i, ridf_j). Words without an
/// embedding (or with a zero vector) contribute similarity 0. Throws
/// InvalidArgument when fewer than 2 words are given or a word has no R-IDF.
double coherence(std::span<const std::string> words, const EmbeddingTable& embeddings,
                 const RidfMap& ridf);

/// Unweighted mean pairwise cosine over unordered pairs; OOV pairs count 0.
double baseline_coherence(std::span<const std::string> words, const EmbeddingTable& embeddings);

/// Cube root of the product of the three factors, each clamped at 0.
double geometric_mean_score(double mean_ridf, double pal_sum, double coh);

struct WordScores {
  WordId id = 0;
  std::string word;
  std::uint64_t df = 0;
  std::uint64_t cf = 0;
  double ridf = 0.0;
  double pal = 0.0;
};

/// Per-word R-IDF and PAL over one vocabulary.
class WordScoreTable {
 public:
  WordScoreTable() = default;
  WordScoreTable(const Vocabulary& vocabulary, const CorpusStats& stats,
                 const ContextWindows& windows,
                 RuleDirection direction = RuleDirection::LeftPrecedesRight);

  std::span<const WordScores> words() const noexcept { return scores_; }
  /// Throws InvalidArgument when the word is not in the scored vocabulary.
  const WordScores& at(std::string_view word) const;
  const RidfMap& ridf_map() const noexcept { return ridf_; }

 private:
  std::vector<WordScores> scores_;
  std::unordered_map<std::string, std::size_t> index_;
  RidfMap ridf_;
};

struct TopicScore {
  std::size_t topic_id = 0;
  double coh = 0.0;
  double pal_sum = 0.0;
  double specificity = 0.0;
  double baseline_coh = 0.0;
  double gm = 0.0;
  double mean_ridf = 0.0;
  std::vector<std::string> words;

  bool operator==(const TopicScore&) const = default;
};

/// Coherence times the summed PAL of the words, plus the comparison scores.
TopicScore specificity(std::span<const std::string> words, const EmbeddingTable& embeddings,
                       const WordScoreTable& word_scores);

/// One TopicScore per topic, in topic order. Independent of `workers`.
std::vector<TopicScore> score_topics(const std::vector<TopicTopWords>& topics,
                                     const WordScoreTable& word_scores,
                                     const EmbeddingTable& embeddings, unsigned workers = 1);

/// Topic-level quantities a selection strategy can rank by.
enum class Metric { Ridf, Pal, Coh, BaselineCoh, Gm, Specificity };

double metric_value(const TopicScore& score, Metric metric);
std::string_view metric_name(Metric metric);
/// Accepts the names returned by metric_name.
std::optional<Metric> parse_metric(std::string_view name);

}  // namespace topicfilter

#include "topicfilter/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topicfilter/error.hpp"
#include "topicfilter/parallel.hpp"

namespace topicfilter {

double residual_idf(std::uint64_t df, std::uint64_t cf, std::uint64_t documents) {
  if (documents == 0 || df == 0 || df > documents || cf < df) {
    throw InvalidArgument("R-IDF needs 1 <= df <= N and cf >= df");
  }
  const double n = static_cast<double>(documents);
  const double idf = -std::log2(static_cast<double>(df) / n);
  const double expected_idf = -std::log2(-std::expm1(-static_cast<double>(cf) / n));
  return idf - expected_idf;
}

double ridf(WordId word, const CorpusStats& stats) {
  if (word >= stats.df.size()) {
    throw InvalidArgument("word id " + std::to_string(word) + " has no corpus statistics");
  }
  return residual_idf(stats.df[word], stats.cf[word], stats.documents);
}

// ---------------------------------------------------------------------------

double pal_pair(WordId left, WordId right, const ContextWindows& windows,
                RuleDirection direction) {
  if (windows.window_count() == 0) throw InvalidArgument("PAL needs at least one window");
  const double total = static_cast<double>(windows.window_count());
  const double support_sum =
      static_cast<double>(windows.membership(left)) / total +
      static_cast<double>(windows.membership(right)) / total;
  if (support_sum == 0.0) return 0.0;
  const std::uint64_t rule = direction == RuleDirection::LeftPrecedesRight
                                 ? windows.ordered(left, right)
                                 : windows.ordered(right, left);
  return (static_cast<double>(rule) / total) / std::sqrt(support_sum);
}

namespace {

double max_over_partners(WordId word, const ContextWindows& forward) {
  if (forward.membership(word) == 0) return 0.0;
  double best = 0.0;
  for (const auto& p : forward.partners(word)) {
    if (p.right == word) continue;
    best = std::max(best, pal_pair(word, p.right, forward));
  }
  return best;
}

}  // namespace

double pal_word(WordId word, const ContextWindows& windows, RuleDirection direction) {
  if (windows.window_count() == 0) return 0.0;
  if (direction == RuleDirection::LeftPrecedesRight) return max_over_partners(word, windows);
  return max_over_partners(word, windows.transposed());
}

double pal_word(WordId word, const ContextWindows& windows, std::span<const WordId> candidates,
                RuleDirection direction) {
  if (candidates.empty()) throw InvalidArgument("PAL candidate set is empty");
  if (windows.window_count() == 0 || windows.membership(word) == 0) return 0.0;
  double best = 0.0;
  for (WordId c : candidates) {
    if (c == word) continue;
    best = std::max(best, pal_pair(word, c, windows, direction));
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

// Cosine with the scoring convention: OOV or zero vectors give 0.
double similarity_or_zero(const std::optional<std::span<const double>>& u,
                          const std::optional<std::span<const double>>& v) {
  if (!u || !v) return 0.0;
  const auto zero = [](std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double c) { return c == 0.0; });
  };
  if (zero(*u) || zero(*v)) return 0.0;
  return cosine(*u, *v);
}

std::vector<std::optional<std::span<const double>>> lookup_all(
    std::span<const std::string> words, const EmbeddingTable& embeddings) {
  std::vector<std::optional<std::span<const double>>> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(embeddings.find(w));
  return out;
}

}  // namespace

double coherence(std::span<const std::string> words, const EmbeddingTable& embeddings,
                 const RidfMap& ridf) {
  const std::size_t K = words.size();
  if (K < 2) throw InvalidArgument("coherence needs at least 2 words");
  std::vector<double> weights(K);
  for (std::size_t i = 0; i < K; ++i) {
    auto it = ridf.find(words[i]);
    if (it == ridf.end()) throw InvalidArgument("no R-IDF for word " + words[i]);
    weights[i] = it->second;
  }
  const auto vectors = lookup_all(words, embeddings);

  // The summand is symmetric in (i, j): each unordered pair stands for two
  // ordered terms.
  double sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      sum += 2.0 * std::max(weights[i], weights[j]) * similarity_or_zero(vectors[i], vectors[j]);
    }
  }
  return sum / static_cast<double>(K * (K - 1));
}

double baseline_coherence(std::span<const std::string> words, const EmbeddingTable& embeddings) {
  const std::size_t K = words.size();
  if (K < 2) throw InvalidArgument("coherence needs at least 2 words");
  const auto vectors = lookup_all(words, embeddings);
  double sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) sum += similarity_or_zero(vectors[i], vectors[j]);
  }
  return sum / static_cast<double>(K * (K - 1) / 2);
}

double geometric_mean_score(double mean_ridf, double pal_sum, double coh) {
  return std::cbrt(std::max(mean_ridf, 0.0) * std::max(pal_sum, 0.0) * std::max(coh, 0.0));
}

// ---------------------------------------------------------------------------

WordScoreTable::WordScoreTable(const Vocabulary& vocabulary, const CorpusStats& stats,
                               const ContextWindows& windows, RuleDirection direction) {
  const std::size_t V = vocabulary.size();
  if (stats.df.size() != V || windows.vocabulary_size() != V) {
    throw InvalidArgument("statistics, windows and vocabulary disagree on vocabulary size");
  }
  const ContextWindows flipped =
      direction == RuleDirection::RightPrecedesLeft ? windows.transposed() : ContextWindows{};
  const ContextWindows& forward = direction == RuleDirection::RightPrecedesLeft ? flipped : windows;

  scores_.reserve(V);
  for (WordId w = 0; w < V; ++w) {
    WordScores s;
    s.id = w;
    s.word = vocabulary.word(w);
    s.df = stats.df[w];
    s.cf = stats.cf[w];
    s.ridf = ridf(w, stats);
    s.pal = forward.window_count() > 0 ? max_over_partners(w, forward) : 0.0;
    index_.emplace(s.word, scores_.size());
    ridf_.emplace(s.word, s.ridf);
    scores_.push_back(std::move(s));
  }
}

const WordScores& WordScoreTable::at(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) throw InvalidArgument("word has no scores: " + std::string(word));
  return scores_[it->second];
}

TopicScore specificity(std::span<const std::string> words, const EmbeddingTable& embeddings,
                       const WordScoreTable& word_scores) {
  if (words.size() < 2) throw InvalidArgument("specificity needs at least 2 words");
  TopicScore out;
  out.words.assign(words.begin(), words.end());
  double ridf_sum = 0.0;
  for (const auto& w : words) {
    const auto& s = word_scores.at(w);
    out.pal_sum += s.pal;
    ridf_sum += s.ridf;
  }
  out.mean_ridf = ridf_sum / static_cast<double>(words.size());
  out.coh = coherence(words, embeddings, word_scores.ridf_map());
  out.specificity = out.coh * out.pal_sum;
  out.baseline_coh = baseline_coherence(words, embeddings);
  out.gm = geometric_mean_score(out.mean_ridf, out.pal_sum, out.coh);
  return out;
}

std::vector<TopicScore> score_topics(const std::vector<TopicTopWords>& topics,
                                     const WordScoreTable& word_scores,
                                     const EmbeddingTable& embeddings, unsigned workers) {
  std::vector<TopicScore> out(topics.size());
  parallel_for(topics.size(), workers, [&](std::size_t i) {
    const auto words = topics[i].word_list();
    out[i] = specificity(words, embeddings, word_scores);
    out[i].topic_id = topics[i].topic_id;
  });
  return out;
}

// ---------------------------------------------------------------------------

double metric_value(const TopicScore& score, Metric metric) {
  switch (metric) {
    case Metric::Ridf: return score.mean_ridf;
    case Metric::Pal: return score.pal_sum;
    case Metric::Coh: return score.coh;
    case Metric::BaselineCoh: return score.baseline_coh;
    case Metric::Gm: return score.gm;
    case Metric::Specificity: return score.specificity;
  }
  return 0.0;
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Ridf: return "ridf";
    case Metric::Pal: return "pal";
    case Metric::Coh: return "coh";
    case Metric::BaselineCoh: return "baseline_coh";
    case Metric::Gm: return "gm";
    case Metric::Specificity: return "specificity";
  }
  return "";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : {Metric::Ridf, Metric::Pal, Metric::Coh, Metric::BaselineCoh, Metric::Gm,
                   Metric::Specificity}) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

}  // namespace topicfilter

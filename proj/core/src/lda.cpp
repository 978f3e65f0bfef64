#include "topicfilter/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "topicfilter/error.hpp"
#include "topicfilter/parallel.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter {
namespace {

// Substream tags so sampler, fold-in and perplexity draws never overlap.
constexpr std::uint64_t kFoldInStream = 0x464f4c44ULL << 32;

std::size_t sample_index(std::span<const double> cumulative, double u) {
  const double target = u * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace

std::size_t sweeps_for_collection(std::size_t documents, double fraction) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(documents))));
}

std::vector<std::string> TopicTopWords::word_list() const {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.word);
  return out;
}

// ---------------------------------------------------------------------------
// GibbsSampler

GibbsSampler::GibbsSampler(const Corpus& corpus, const LdaOptions& options)
    : corpus_(corpus),
      K_(options.topics),
      V_(corpus.vocabulary().size()),
      alpha_(options.resolved_alpha()),
      beta_(options.beta),
      seed_(options.seed),
      rng_(make_rng(options.seed)) {
  if (K_ < 2) throw InvalidArgument("LDA needs at least 2 topics");
  if (corpus.empty()) throw InvalidArgument("LDA needs a non-empty corpus");
  if (V_ == 0) throw InvalidArgument("LDA needs a non-empty vocabulary");
  if (!(alpha_ > 0.0) || !(beta_ > 0.0)) throw InvalidArgument("Dirichlet priors must be > 0");
  if (K_ > corpus.size()) {
    spdlog::warn("LDA: {} topics for only {} documents", K_, corpus.size());
  }

  const std::size_t N = corpus.size();
  assignments_.resize(N);
  doc_topic_counts_.assign(N * K_, 0);
  topic_word_counts_.assign(K_ * V_, 0);
  topic_totals_.assign(K_, 0);
  weights_.resize(K_);

  for (std::size_t d = 0; d < N; ++d) {
    const auto& tokens = corpus.document(d).tokens;
    auto& z = assignments_[d];
    z.resize(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto k = static_cast<std::uint32_t>(rng_() % K_);
      z[i] = k;
      ++doc_topic_counts_[d * K_ + k];
      ++topic_word_counts_[k * V_ + tokens[i]];
      ++topic_totals_[k];
    }
  }
}

void GibbsSampler::sweep() {
  const double v_beta = static_cast<double>(V_) * beta_;
  for (std::size_t d = 0; d < corpus_.size(); ++d) {
    const auto& tokens = corpus_.document(d).tokens;
    auto& z = assignments_[d];
    std::uint32_t* nd = &doc_topic_counts_[d * K_];
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const WordId w = tokens[i];
      std::uint32_t k = z[i];
      --nd[k];
      --topic_word_counts_[k * V_ + w];
      --topic_totals_[k];

      double acc = 0.0;
      for (std::size_t t = 0; t < K_; ++t) {
        acc += (nd[t] + alpha_) * (topic_word_counts_[t * V_ + w] + beta_) /
               (static_cast<double>(topic_totals_[t]) + v_beta);
        weights_[t] = acc;
      }
      k = static_cast<std::uint32_t>(sample_index(weights_, uniform01(rng_)));

      z[i] = k;
      ++nd[k];
      ++topic_word_counts_[k * V_ + w];
      ++topic_totals_[k];
    }
  }
  ++sweeps_done_;
}

TopicModel GibbsSampler::snapshot() const {
  TopicModel m;
  m.topics = K_;
  m.alpha = alpha_;
  m.beta = beta_;
  m.seed = seed_;
  m.sweeps = sweeps_done_;
  m.vocabulary = corpus_.vocabulary();
  m.corpus_fingerprint = corpus_.fingerprint();

  m.topic_word = Matrix(K_, V_);
  const double v_beta = static_cast<double>(V_) * beta_;
  for (std::size_t k = 0; k < K_; ++k) {
    const double denom = static_cast<double>(topic_totals_[k]) + v_beta;
    for (std::size_t w = 0; w < V_; ++w) {
      m.topic_word(k, w) = (topic_word_counts_[k * V_ + w] + beta_) / denom;
    }
  }

  const std::size_t N = corpus_.size();
  m.doc_topic = Matrix(N, K_);
  const double k_alpha = static_cast<double>(K_) * alpha_;
  for (std::size_t d = 0; d < N; ++d) {
    const double denom = static_cast<double>(assignments_[d].size()) + k_alpha;
    for (std::size_t k = 0; k < K_; ++k) {
      m.doc_topic(d, k) = (doc_topic_counts_[d * K_ + k] + alpha_) / denom;
    }
  }
  return m;
}

double GibbsSampler::log_likelihood_per_word() const {
  return training_log_likelihood(snapshot(), corpus_);
}

// ---------------------------------------------------------------------------

TopicModel train_lda(const Corpus& corpus, const LdaOptions& options,
                     const SweepObserver& observer) {
  if (options.sweeps < 1) throw InvalidArgument("LDA needs at least 1 sweep");
  GibbsSampler sampler(corpus, options);
  for (std::size_t s = 1; s <= options.sweeps; ++s) {
    sampler.sweep();
    if (observer) observer(s, sampler);
  }
  return sampler.snapshot();
}

TopicTopWords top_words(const TopicModel& model, std::size_t topic_id, std::size_t count) {
  if (topic_id >= model.topics) {
    throw InvalidArgument("topic id " + std::to_string(topic_id) + " out of range");
  }
  const auto row = model.topic_word.row(topic_id);
  std::vector<WordId> order(row.size());
  std::iota(order.begin(), order.end(), WordId{0});
  const std::size_t n = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](WordId a, WordId b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  TopicTopWords out;
  out.topic_id = topic_id;
  out.words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.words.push_back({order[i], model.vocabulary.word(order[i]), row[order[i]]});
  }
  return out;
}

std::vector<TopicTopWords> all_top_words(const TopicModel& model, std::size_t count) {
  std::vector<TopicTopWords> out;
  out.reserve(model.topics);
  for (std::size_t k = 0; k < model.topics; ++k) out.push_back(top_words(model, k, count));
  return out;
}

std::vector<double> infer_topics(const TopicModel& model, std::span<const WordId> tokens,
                                 std::size_t sweeps, std::uint64_t seed) {
  const std::size_t K = model.topics;
  std::vector<double> theta(K, 1.0 / static_cast<double>(K));
  if (tokens.empty()) return theta;

  auto rng = make_rng(seed, kFoldInStream);
  std::vector<std::uint32_t> z(tokens.size());
  std::vector<std::uint32_t> counts(K, 0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    z[i] = static_cast<std::uint32_t>(rng() % K);
    ++counts[z[i]];
  }
  std::vector<double> cumulative(K);
  for (std::size_t s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      --counts[z[i]];
      double acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        acc += (counts[k] + model.alpha) * model.topic_word(k, tokens[i]);
        cumulative[k] = acc;
      }
      z[i] = static_cast<std::uint32_t>(sample_index(cumulative, uniform01(rng)));
      ++counts[z[i]];
    }
  }
  const double denom = static_cast<double>(tokens.size()) + static_cast<double>(K) * model.alpha;
  for (std::size_t k = 0; k < K; ++k) theta[k] = (counts[k] + model.alpha) / denom;
  return theta;
}

namespace {

double doc_log2_likelihood(const TopicModel& model, std::span<const double> theta,
                           std::span<const WordId> tokens) {
  double sum = 0.0;
  for (WordId w : tokens) {
    double p = 0.0;
    for (std::size_t k = 0; k < model.topics; ++k) p += theta[k] * model.topic_word(k, w);
    sum += std::log2(p);
  }
  return sum;
}

}  // namespace

double perplexity(const TopicModel& model, const Corpus& heldout, const InferenceOptions& options) {
  const std::size_t N = heldout.size();
  std::vector<std::vector<WordId>> mapped(N);
  std::size_t total = 0;
  for (std::size_t d = 0; d < N; ++d) {
    for (WordId t : heldout.document(d).tokens) {
      if (auto id = model.vocabulary.find(heldout.vocabulary().word(t))) mapped[d].push_back(*id);
    }
    total += mapped[d].size();
  }
  if (total == 0) throw Error("held-out corpus shares no words with the model");

  std::vector<double> per_doc(N, 0.0);
  parallel_for(N, options.workers, [&](std::size_t d) {
    if (mapped[d].empty()) return;
    const auto theta = infer_topics(model, mapped[d], options.sweeps, derive_seed(model.seed, d));
    per_doc[d] = doc_log2_likelihood(model, theta, mapped[d]);
  });
  return std::accumulate(per_doc.begin(), per_doc.end(), 0.0) / static_cast<double>(total);
}

double training_log_likelihood(const TopicModel& model, const Corpus& corpus) {
  if (corpus.size() != model.doc_topic.rows()) {
    throw InvalidArgument("corpus is not the model's training corpus");
  }
  double sum = 0.0;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    sum += doc_log2_likelihood(model, model.doc_topic.row(d), corpus.document(d).tokens);
  }
  return sum / static_cast<double>(corpus.total_tokens());
}

Matrix doc_features(const TopicModel& model, const Corpus& corpus,
                    const InferenceOptions& options) {
  if (corpus.vocabulary().fingerprint() != model.vocabulary.fingerprint()) {
    throw InvalidArgument("corpus vocabulary does not match the model vocabulary");
  }
  if (corpus.fingerprint() == model.corpus_fingerprint &&
      corpus.size() == model.doc_topic.rows()) {
    return model.doc_topic;
  }
  Matrix out(corpus.size(), model.topics);
  parallel_for(corpus.size(), options.workers, [&](std::size_t d) {
    const auto theta = infer_topics(model, corpus.document(d).tokens, options.sweeps,
                                    derive_seed(model.seed, d));
    std::copy(theta.begin(), theta.end(), out.row(d).begin());
  });
  return out;
}

}  // namespace topicfilter

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "topicfilter/error.hpp"
#include "topicfilter/lda.hpp"
#include "topicfilter/synthetic.hpp"

using namespace topicfilter;

namespace {

Corpus small_corpus() {
  return Corpus::from_tokens({{"apple", "banana", "apple", "cherry"},
                              {"dog", "cat", "dog", "mouse"},
                              {"apple", "cherry", "banana"},
                              {"cat", "mouse", "dog", "cat"}});
}

TopicModel two_topic_model() {
  TopicModel m;
  m.topics = 2;
  m.alpha = 0.1;
  m.beta = 0.01;
  m.seed = 9;
  for (const char* w : {"a", "b", "c", "d"}) m.vocabulary.add(w);
  m.topic_word = Matrix(2, 4);
  const double rows[2][4] = {{0.49, 0.49, 0.01, 0.01}, {0.01, 0.01, 0.49, 0.49}};
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t w = 0; w < 4; ++w) m.topic_word(k, w) = rows[k][w];
  }
  return m;
}

}  // namespace

TEST(Lda, RejectsSingleTopic) {
  LdaOptions o;
  o.topics = 1;
  o.sweeps = 5;
  EXPECT_THROW(train_lda(small_corpus(), o), InvalidArgument);
}

TEST(Lda, RejectsZeroSweepsAndEmptyCorpus) {
  LdaOptions o;
  o.topics = 2;
  o.sweeps = 0;
  EXPECT_THROW(train_lda(small_corpus(), o), InvalidArgument);
  o.sweeps = 3;
  EXPECT_THROW(train_lda(Corpus{}, o), InvalidArgument);
}

TEST(Lda, DefaultAlphaIsFiftyOverK) {
  LdaOptions o;
  o.topics = 20;
  EXPECT_DOUBLE_EQ(o.resolved_alpha(), 2.5);
  EXPECT_EQ(sweeps_for_collection(12000), 2400u);
}

TEST(Lda, DeterministicForSeed) {
  LdaOptions o;
  o.topics = 3;
  o.sweeps = 20;
  o.seed = 42;
  const auto corpus = small_corpus();
  EXPECT_EQ(train_lda(corpus, o), train_lda(corpus, o));
  o.seed = 43;
  const auto other = train_lda(corpus, o);
  o.seed = 42;
  EXPECT_NE(train_lda(corpus, o).topic_word, other.topic_word);
}

TEST(Lda, RowsAreDistributions) {
  LdaOptions o;
  o.topics = 4;
  o.sweeps = 10;
  const auto m = train_lda(small_corpus(), o);
  for (std::size_t k = 0; k < m.topics; ++k) {
    const auto r = m.topic_word.row(k);
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-9);
  }
  for (std::size_t d = 0; d < m.doc_topic.rows(); ++d) {
    const auto r = m.doc_topic.row(d);
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(Lda, AssignmentCountsAreConserved) {
  const auto planted = generate_planted_topics({3, 40, 30, 25, 0.3, 0.1, 2});
  LdaOptions o;
  o.topics = 3;
  GibbsSampler sampler(planted.corpus, o);
  for (int s = 0; s < 15; ++s) {
    sampler.sweep();
    const auto& totals = sampler.topic_totals();
    EXPECT_EQ(std::accumulate(totals.begin(), totals.end(), std::uint64_t{0}),
              planted.corpus.total_tokens());
  }
  EXPECT_EQ(sampler.sweeps_done(), 15u);
}

TEST(Lda, LikelihoodImprovesOverRandomStart) {
  const auto planted = generate_planted_topics({4, 150, 60, 60, 0.2, 0.1, 8});
  LdaOptions o;
  o.topics = 4;
  o.alpha = 0.2;
  GibbsSampler sampler(planted.corpus, o);
  const double start = sampler.log_likelihood_per_word();
  for (int s = 0; s < 60; ++s) sampler.sweep();
  EXPECT_GT(sampler.log_likelihood_per_word(), start + 0.1);
  EXPECT_LE(sampler.log_likelihood_per_word(), 0.0);
}

TEST(TopWords, PointMassComesFirst) {
  auto m = two_topic_model();
  m.topic_word(0, 0) = 0.0;
  m.topic_word(0, 1) = 0.0;
  m.topic_word(0, 2) = 1.0;
  m.topic_word(0, 3) = 0.0;
  const auto t = top_words(m, 0, 2);
  ASSERT_EQ(t.words.size(), 2u);
  EXPECT_EQ(t.words[0].word, "c");
  EXPECT_DOUBLE_EQ(t.words[0].probability, 1.0);
}

TEST(TopWords, ClampsToVocabularySize) {
  EXPECT_EQ(top_words(two_topic_model(), 1, 25).words.size(), 4u);
  EXPECT_THROW(top_words(two_topic_model(), 2, 5), InvalidArgument);
}

TEST(TopWords, OrderMatchesFullSort) {
  LdaOptions o;
  o.topics = 3;
  o.sweeps = 15;
  const auto planted = generate_planted_topics({3, 60, 50, 30, 0.3, 0.1, 4});
  const auto m = train_lda(planted.corpus, o);
  for (std::size_t k = 0; k < m.topics; ++k) {
    const auto row = m.topic_word.row(k);
    std::vector<WordId> order(row.size());
    std::iota(order.begin(), order.end(), WordId{0});
    std::stable_sort(order.begin(), order.end(), [&](WordId a, WordId b) { return row[a] > row[b]; });
    const auto t = top_words(m, k, 10);
    for (std::size_t i = 0; i < t.words.size(); ++i) EXPECT_EQ(t.words[i].id, order[i]);
  }
}

TEST(Perplexity, UniformModelGivesMinusLogV) {
  auto m = two_topic_model();
  for (double& x : m.topic_word.data()) x = 0.25;
  const auto heldout = Corpus::from_tokens({{"a", "c", "zzz"}, {"b", "d", "d"}});
  EXPECT_DOUBLE_EQ(perplexity(m, heldout), -2.0);
}

TEST(Perplexity, AllOutOfVocabularyIsAnError) {
  EXPECT_THROW(perplexity(two_topic_model(), Corpus::from_tokens({{"x", "y"}})), Error);
}

TEST(Perplexity, NonPositiveAndSeedStable) {
  const auto m = two_topic_model();
  const auto heldout = Corpus::from_tokens({{"a", "b", "a"}, {"c", "d", "a"}});
  const double p = perplexity(m, heldout);
  EXPECT_LE(p, 0.0);
  EXPECT_EQ(p, perplexity(m, heldout, {50, 2}));
}

TEST(FoldIn, SingleTopicDocumentConcentratesOnThatTopic) {
  const auto m = two_topic_model();
  std::vector<WordId> doc;
  for (int i = 0; i < 100; ++i) doc.push_back(static_cast<WordId>(i % 2));
  const auto theta = infer_topics(m, doc, 50, 1);
  EXPECT_NEAR(theta[0] + theta[1], 1.0, 1e-9);
  EXPECT_GT(theta[0], 0.95);
  EXPECT_EQ(theta, infer_topics(m, doc, 50, 1));
}

TEST(DocFeatures, TrainingCorpusUsesStoredRows) {
  LdaOptions o;
  o.topics = 2;
  o.sweeps = 5;
  const auto corpus = small_corpus();
  const auto m = train_lda(corpus, o);
  EXPECT_EQ(doc_features(m, corpus), m.doc_topic);

  const auto other = Corpus(corpus.vocabulary(), {corpus.document(0)});
  const auto f = doc_features(m, other);
  ASSERT_EQ(f.rows(), 1u);
  EXPECT_NEAR(f(0, 0) + f(0, 1), 1.0, 1e-9);
  EXPECT_THROW(doc_features(m, Corpus::from_tokens({{"q"}})), InvalidArgument);
}

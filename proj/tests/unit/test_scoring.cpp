#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "topicfilter/error.hpp"
#include "topicfilter/scoring.hpp"

using namespace topicfilter;

namespace {

EmbeddingTable table_of(std::initializer_list<std::pair<const char*, std::vector<double>>> rows,
                        NormPolicy policy = NormPolicy::Raw) {
  EmbeddingTable t(rows.begin()->second.size(), policy);
  for (const auto& [w, v] : rows) t.set(w, v);
  return t;
}

struct Abac {
  Corpus corpus = Corpus::from_tokens({{"a", "b", "a", "c"}});
  ContextWindows windows = extract_windows(corpus, 2);
  WordId a = corpus.vocabulary().id("a");
  WordId b = corpus.vocabulary().id("b");
  WordId c = corpus.vocabulary().id("c");
};

}  // namespace

TEST(Ridf, HandEvaluatedValues) {
  EXPECT_NEAR(residual_idf(1, 10, 100), 6.643856189774724 + std::log2(1.0 - std::exp(-0.1)),
              1e-12);
  EXPECT_NEAR(residual_idf(1, 10, 100), 3.2504, 1e-4);
  EXPECT_NEAR(residual_idf(1, 1, 100), -0.0072, 1e-4);
  EXPECT_NEAR(residual_idf(100, 100, 100), -0.6617, 1e-4);
}

TEST(Ridf, RejectsImpossibleCounts) {
  EXPECT_THROW(residual_idf(0, 0, 10), InvalidArgument);
  EXPECT_THROW(residual_idf(11, 20, 10), InvalidArgument);
  EXPECT_THROW(residual_idf(5, 4, 10), InvalidArgument);
}

TEST(Pal, PairHandExample) {
  Abac f;
  const double expected = (1.0 / 3.0) / std::sqrt(5.0 / 3.0);
  EXPECT_NEAR(pal_pair(f.a, f.b, f.windows), expected, 1e-15);
  EXPECT_NEAR(pal_pair(f.a, f.b, f.windows), 0.25820, 1e-5);
  EXPECT_NEAR(pal_pair(f.b, f.a, f.windows), expected, 1e-15);
}

TEST(Pal, NeverCoWindowedIsZero) {
  Abac f;
  EXPECT_EQ(pal_pair(f.c, f.b, f.windows), 0.0);
  EXPECT_EQ(pal_pair(f.b, f.c, f.windows), 0.0);
}

TEST(Pal, DirectionFlagSwapsOrderedSupport) {
  Abac f;
  EXPECT_GT(pal_pair(f.a, f.c, f.windows), 0.0);
  EXPECT_EQ(pal_pair(f.a, f.c, f.windows, RuleDirection::RightPrecedesLeft), 0.0);
  EXPECT_EQ(pal_pair(f.c, f.a, f.windows, RuleDirection::RightPrecedesLeft),
            pal_pair(f.a, f.c, f.windows));
}

TEST(Pal, EmptyTableRejected) {
  const auto w = extract_windows(Corpus::from_tokens({{"a"}}), 2);
  EXPECT_THROW(pal_pair(0, 0, w), InvalidArgument);
  EXPECT_EQ(pal_word(0, w), 0.0);
}

TEST(Pal, WordHandExample) {
  Abac f;
  EXPECT_NEAR(pal_word(f.a, f.windows), (1.0 / 3.0) / std::sqrt(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(pal_word(f.a, f.windows), 0.28868, 1e-5);
  const std::vector<WordId> cands{f.c, f.b, f.a}, reversed{f.a, f.b, f.c};
  EXPECT_EQ(pal_word(f.a, f.windows, cands), pal_word(f.a, f.windows, reversed));
  EXPECT_EQ(pal_word(f.a, f.windows, cands), pal_word(f.a, f.windows));
  EXPECT_THROW(pal_word(f.a, f.windows, std::vector<WordId>{}), InvalidArgument);
}

TEST(Pal, AbsentWordIsZero) {
  Abac f;
  EXPECT_EQ(pal_word(99, f.windows), 0.0);
}

TEST(Pal, AsymmetricWhenOrderedCountsDiffer) {
  std::mt19937_64 rng(13);
  int asymmetric = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> doc(12);
    for (auto& t : doc) t = std::string(1, static_cast<char>('a' + rng() % 4));
    const auto corpus = Corpus::from_tokens({doc});
    const auto w = extract_windows(corpus, 3);
    const auto V = static_cast<WordId>(corpus.vocabulary().size());
    for (WordId l = 0; l < V; ++l) {
      for (WordId r = 0; r < V; ++r) {
        const bool same_counts = w.ordered(l, r) == w.ordered(r, l);
        EXPECT_EQ(pal_pair(l, r, w) == pal_pair(r, l, w), same_counts);
        asymmetric += !same_counts;
      }
    }
  }
  EXPECT_GT(asymmetric, 0);
}

TEST(Coherence, HandExample) {
  const auto e = table_of({{"x", {1, 0}}, {"y", {1, 0}}, {"z", {0, 1}}});
  const RidfMap r{{"x", 1}, {"y", 2}, {"z", 3}};
  const std::vector<std::string> words{"x", "y", "z"};
  EXPECT_NEAR(coherence(words, e, r), 4.0 / 6.0, 1e-12);
}

TEST(Coherence, IdenticalPairGivesMaxRidf) {
  const auto e = table_of({{"x", {0.3, 0.4}}, {"y", {0.6, 0.8}}});
  const std::vector<std::string> words{"x", "y"};
  EXPECT_NEAR(coherence(words, e, {{"x", 1.5}, {"y", 0.5}}), 1.5, 1e-12);
}

TEST(Coherence, OrthogonalIsZero) {
  const auto e = table_of({{"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"z", {0, 0, 1}}});
  const std::vector<std::string> words{"x", "y", "z"};
  EXPECT_EQ(coherence(words, e, {{"x", 1}, {"y", 2}, {"z", 3}}), 0.0);
  EXPECT_EQ(baseline_coherence(words, e), 0.0);
}

TEST(Coherence, OutOfVocabularyContributesZero) {
  const auto e = table_of({{"x", {1, 0}}, {"y", {1, 0}}, {"zero", {0, 0}}});
  const std::vector<std::string> words{"x", "y", "missing", "zero"};
  const RidfMap r{{"x", 1}, {"y", 1}, {"missing", 5}, {"zero", 5}};
  EXPECT_NEAR(coherence(words, e, r), 2.0 / 12.0, 1e-12);
  EXPECT_NEAR(baseline_coherence(words, e), 1.0 / 6.0, 1e-12);
}

TEST(Coherence, Preconditions) {
  const auto e = table_of({{"x", {1, 0}}, {"y", {1, 0}}});
  const std::vector<std::string> one{"x"}, two{"x", "y"};
  EXPECT_THROW(coherence(one, e, {{"x", 1}}), InvalidArgument);
  EXPECT_THROW(coherence(two, e, {{"x", 1}}), InvalidArgument);
}

TEST(Coherence, PermutationScaleAndReductionProperties) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t K = 2 + rng() % 10;
    EmbeddingTable e(5, NormPolicy::Raw);
    RidfMap r, ones;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < K; ++i) {
      const auto w = "w" + std::to_string(i);
      std::vector<double> v(5);
      for (auto& x : v) x = gauss(rng);
      if (rng() % 5) e.set(w, v);
      r[w] = gauss(rng) * 2;
      ones[w] = 1.0;
      words.push_back(w);
    }
    const double base = coherence(words, e, r);
    auto shuffled = words;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_NEAR(coherence(shuffled, e, r), base, 1e-12);
    EXPECT_NEAR(coherence(words, e.scaled(3.7), r), base, 1e-12);
    EXPECT_NEAR(coherence(words, e, ones), baseline_coherence(words, e), 1e-12);
  }
}

TEST(Geometric, Values) {
  EXPECT_DOUBLE_EQ(geometric_mean_score(1, 1, 1), 1.0);
  EXPECT_EQ(geometric_mean_score(-1, 2, 3), 0.0);
  EXPECT_EQ(geometric_mean_score(1, 0, 3), 0.0);
  EXPECT_NEAR(geometric_mean_score(0.5, 2, 0.25), std::cbrt(0.25), 1e-15);
  EXPECT_NEAR(geometric_mean_score(0.5, 2, 0.25), 0.62996, 1e-5);
}

namespace {

// Two documents where "a b" always co-occur; "c d" only in the second.
struct SmallScores {
  Corpus corpus = Corpus::from_tokens({{"a", "b", "a", "b"}, {"c", "d", "a", "b", "c", "d"}});
  CorpusStats stats = compute_stats(corpus);
  ContextWindows windows = extract_windows(corpus, 2);
  WordScoreTable table{corpus.vocabulary(), stats, windows};
  EmbeddingTable embeddings =
      table_of({{"a", {1, 0}}, {"b", {1, 0}}, {"c", {0, 1}}, {"d", {0.6, 0.8}}}, NormPolicy::Unit);
};

}  // namespace

TEST(Specificity, ProductOfCoherenceAndPalSum) {
  SmallScores s;
  const std::vector<std::string> words{"a", "b", "d"};
  const auto t = specificity(words, s.embeddings, s.table);
  const double pal_sum = s.table.at("a").pal + s.table.at("b").pal + s.table.at("d").pal;
  EXPECT_NEAR(t.pal_sum, pal_sum, 1e-15);
  EXPECT_NEAR(t.specificity, t.coh * pal_sum, 1e-15);
  EXPECT_NEAR(t.coh, coherence(words, s.embeddings, s.table.ridf_map()), 1e-15);
  EXPECT_NEAR(t.mean_ridf,
              (s.table.at("a").ridf + s.table.at("b").ridf + s.table.at("d").ridf) / 3.0, 1e-15);
  EXPECT_NEAR(t.gm, geometric_mean_score(t.mean_ridf, t.pal_sum, t.coh), 1e-15);
}

TEST(Specificity, ZeroCoherenceGivesZero) {
  SmallScores s;
  const auto orthogonal = table_of({{"a", {1, 0}}, {"c", {0, 1}}});
  const std::vector<std::string> words{"a", "c"};
  EXPECT_EQ(specificity(words, orthogonal, s.table).specificity, 0.0);
}

TEST(Specificity, ZeroPalGivesZero) {
  // Every word occupies its own document, so no window holds two words.
  const auto corpus = Corpus::from_tokens({{"a", "a"}, {"b", "b"}});
  const auto table = WordScoreTable(corpus.vocabulary(), compute_stats(corpus),
                                    extract_windows(corpus, 2));
  const auto e = table_of({{"a", {1, 0}}, {"b", {1, 0}}});
  const std::vector<std::string> words{"a", "b"};
  const auto t = specificity(words, e, table);
  EXPECT_GT(t.coh, 0.0);
  EXPECT_EQ(t.pal_sum, 0.0);
  EXPECT_EQ(t.specificity, 0.0);
}

TEST(Specificity, StatedArithmetic) {
  // coh = 0.5 with pal values {0.2, 0.3}.
  const double coh = 0.5, pal_sum = 0.2 + 0.3;
  EXPECT_DOUBLE_EQ(coh * pal_sum, 0.25);
}

TEST(ScoreTopics, CardinalityDuplicatesAndWorkers) {
  SmallScores s;
  auto make = [&](std::size_t id, std::vector<std::string> words) {
    TopicTopWords t;
    t.topic_id = id;
    for (const auto& w : words) t.words.push_back({s.corpus.vocabulary().id(w), w, 0.0});
    return t;
  };
  const std::vector<TopicTopWords> topics{make(0, {"a", "b"}), make(1, {"c", "d", "a"}),
                                          make(2, {"a", "b"})};
  const auto scores = score_topics(topics, s.table, s.embeddings, 1);
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].coh, scores[2].coh);
  EXPECT_EQ(scores[0].specificity, scores[2].specificity);
  EXPECT_EQ(scores[2].topic_id, 2u);
  EXPECT_EQ(score_topics(topics, s.table, s.embeddings, 3), scores);
}

TEST(Metric, NamesRoundTrip) {
  for (Metric m : {Metric::Ridf, Metric::Pal, Metric::Coh, Metric::BaselineCoh, Metric::Gm,
                   Metric::Specificity}) {
    EXPECT_EQ(parse_metric(metric_name(m)), m);
  }
  EXPECT_FALSE(parse_metric("bogus"));
}

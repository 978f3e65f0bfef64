#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "topicfilter/corpus.hpp"
#include "topicfilter/error.hpp"
#include "topicfilter/windows.hpp"

using namespace topicfilter;

namespace {

// Direct enumeration of every window of every document.
struct BruteWindows {
  std::uint64_t count = 0;
  std::map<WordId, std::uint64_t> membership;
  std::map<std::pair<WordId, WordId>, std::uint64_t> ordered;

  BruteWindows(const Corpus& corpus, std::size_t n) {
    for (const auto& d : corpus.documents()) {
      if (d.tokens.size() < n) continue;
      for (std::size_t s = 0; s + n <= d.tokens.size(); ++s) {
        ++count;
        std::set<WordId> seen;
        std::set<std::pair<WordId, WordId>> pairs;
        for (std::size_t i = s; i < s + n; ++i) {
          seen.insert(d.tokens[i]);
          for (std::size_t j = i + 1; j < s + n; ++j) pairs.insert({d.tokens[i], d.tokens[j]});
        }
        for (auto w : seen) ++membership[w];
        for (auto p : pairs) ++ordered[p];
      }
    }
  }
};

}  // namespace

TEST(Windows, HandEnumeratedExample) {
  const auto corpus = Corpus::from_tokens({{"a", "b", "a", "c"}});
  const auto& v = corpus.vocabulary();
  const auto w = extract_windows(corpus, 2);
  EXPECT_EQ(w.window_count(), 3u);
  EXPECT_EQ(w.membership(v.id("a")), 3u);
  EXPECT_EQ(w.membership(v.id("b")), 2u);
  EXPECT_EQ(w.membership(v.id("c")), 1u);
  EXPECT_EQ(w.ordered(v.id("a"), v.id("b")), 1u);
  EXPECT_EQ(w.ordered(v.id("b"), v.id("a")), 1u);
  EXPECT_EQ(w.ordered(v.id("a"), v.id("c")), 1u);
  EXPECT_EQ(w.ordered(v.id("c"), v.id("a")), 0u);
}

TEST(Windows, ShortDocumentHasNoWindows) {
  const auto w = extract_windows(Corpus::from_tokens({{"a"}}), 5);
  EXPECT_EQ(w.window_count(), 0u);
  EXPECT_EQ(w.membership(0), 0u);
}

TEST(Windows, RepeatedWordFormsSelfPair) {
  const auto w = extract_windows(Corpus::from_tokens({{"a", "a"}}), 2);
  EXPECT_EQ(w.window_count(), 1u);
  EXPECT_EQ(w.membership(0), 1u);
  EXPECT_EQ(w.ordered(0, 0), 1u);
}

TEST(Windows, DoNotCrossDocuments) {
  const auto w = extract_windows(Corpus::from_tokens({{"a", "b"}, {"c", "d"}}), 2);
  EXPECT_EQ(w.window_count(), 2u);
  EXPECT_EQ(w.ordered(1, 2), 0u);
}

TEST(Windows, LengthBelowTwoRejected) {
  EXPECT_THROW(extract_windows(Corpus::from_tokens({{"a", "b"}}), 1), InvalidArgument);
}

TEST(Windows, MatchBruteForceOnRandomCorpora) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::string>> docs(1 + rng() % 4);
    for (auto& d : docs) {
      d.resize(1 + rng() % 15);
      for (auto& t : d) t = std::string(1, static_cast<char>('a' + rng() % 6));
    }
    const auto corpus = Corpus::from_tokens(docs);
    const std::size_t n = 2 + rng() % 4;
    const auto w = extract_windows(corpus, n);
    const BruteWindows brute(corpus, n);
    ASSERT_EQ(w.window_count(), brute.count);
    const auto V = static_cast<WordId>(corpus.vocabulary().size());
    for (WordId a = 0; a < V; ++a) {
      const auto m = brute.membership.find(a);
      EXPECT_EQ(w.membership(a), m == brute.membership.end() ? 0u : m->second);
      for (WordId b = 0; b < V; ++b) {
        const auto o = brute.ordered.find({a, b});
        EXPECT_EQ(w.ordered(a, b), o == brute.ordered.end() ? 0u : o->second);
      }
    }
  }
}

TEST(Windows, TransposeSwapsOrder) {
  const auto w = extract_windows(Corpus::from_tokens({{"a", "b", "c", "a", "d"}}), 3);
  const auto t = w.transposed();
  for (WordId a = 0; a < 4; ++a) {
    EXPECT_EQ(t.membership(a), w.membership(a));
    for (WordId b = 0; b < 4; ++b) EXPECT_EQ(t.ordered(a, b), w.ordered(b, a));
  }
  EXPECT_EQ(t.transposed(), w);
}

TEST(Windows, FromCountsRoundTrip) {
  const auto w = extract_windows(Corpus::from_tokens({{"a", "b", "c", "b", "a"}}), 3);
  const auto counts = w.membership_counts();
  const auto rebuilt = ContextWindows::from_counts(
      w.window_length(), w.window_count(), {counts.begin(), counts.end()}, w.pair_records());
  EXPECT_EQ(rebuilt, w);
}

TEST(Windows, FromCountsRejectsInconsistentInput) {
  // Pair count above the left word's membership.
  EXPECT_THROW(ContextWindows::from_counts(2, 1, {1, 1}, {{0, 1, 2}}), InvalidArgument);
  // Duplicate pair.
  EXPECT_THROW(ContextWindows::from_counts(2, 1, {1, 1}, {{0, 1, 1}, {0, 1, 1}}), InvalidArgument);
  // Word id out of range.
  EXPECT_THROW(ContextWindows::from_counts(2, 1, {1, 1}, {{0, 5, 1}}), InvalidArgument);
}

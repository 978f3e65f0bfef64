#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "topicfilter/corpus.hpp"
#include "topicfilter/error.hpp"

using namespace topicfilter;

namespace {

TokenizerConfig with_stopwords(std::initializer_list<const char*> words) {
  TokenizerConfig c;
  for (auto* w : words) c.stopwords.insert(w);
  return c;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST(Tokenizer, CasefoldsAndDropsStopwords) {
  EXPECT_EQ(tokenize("The cat, the CAT!", with_stopwords({"the"})),
            (std::vector<std::string>{"cat", "cat"}));
}

TEST(Tokenizer, EmptyInput) { EXPECT_TRUE(tokenize("", TokenizerConfig{}).empty()); }

TEST(Tokenizer, DigitsSplitRunsBelowMinimumLength) {
  EXPECT_TRUE(tokenize("a1b2", TokenizerConfig{}).empty());
}

TEST(Tokenizer, KeepsCaseWhenAsked) {
  TokenizerConfig c;
  c.lowercase = false;
  EXPECT_EQ(tokenize("Alpha beta", c), (std::vector<std::string>{"Alpha", "beta"}));
}

TEST(Tokenizer, Utf8WordsStayWholeAndCountCodePoints) {
  TokenizerConfig c;
  c.min_token_len = 3;
  // "été" is 3 code points but 5 bytes; "né" is 2 code points.
  EXPECT_EQ(tokenize("\xC3\xA9t\xC3\xA9 n\xC3\xA9", c), (std::vector<std::string>{"\xC3\xA9t\xC3\xA9"}));
  EXPECT_EQ(utf8_length("\xC3\xA9t\xC3\xA9"), 3u);
}

TEST(Tokenizer, IdempotentOnRandomText) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ ,.;!?019-\t\n";
  const auto config = with_stopwords({"ab", "the"});
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const auto n = rng() % 80;
    for (std::size_t i = 0; i < n; ++i) text += alphabet[rng() % alphabet.size()];
    const auto once = tokenize(text, config);
    EXPECT_EQ(tokenize(join(once), config), once) << text;
  }
}

TEST(Stats, HandCountedExample) {
  const auto corpus = Corpus::from_tokens({{"a", "b"}, {"a", "a"}});
  const auto stats = compute_stats(corpus);
  const auto a = corpus.vocabulary().id("a");
  const auto b = corpus.vocabulary().id("b");
  EXPECT_EQ(stats.documents, 2u);
  EXPECT_EQ(stats.total_tokens, 4u);
  EXPECT_EQ(stats.df[a], 2u);
  EXPECT_EQ(stats.cf[a], 3u);
  EXPECT_EQ(stats.df[b], 1u);
  EXPECT_EQ(stats.cf[b], 1u);
}

TEST(Stats, SingleDocument) {
  const auto stats = compute_stats(Corpus::from_tokens({{"a"}}));
  EXPECT_EQ(stats.documents, 1u);
  EXPECT_EQ(stats.df[0], 1u);
  EXPECT_EQ(stats.cf[0], 1u);
}

TEST(Stats, EmptyCorpusRejected) { EXPECT_THROW(compute_stats(Corpus{}), InvalidArgument); }

TEST(Stats, MatchNaiveRecountOnRandomCorpora) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> docs(1 + rng() % 20);
    for (auto& d : docs) {
      d.resize(1 + rng() % 30);
      for (auto& t : d) t = std::string(1, static_cast<char>('a' + rng() % 12));
    }
    const auto corpus = Corpus::from_tokens(docs);
    const auto stats = compute_stats(corpus);
    for (WordId w = 0; w < corpus.vocabulary().size(); ++w) {
      const auto& word = corpus.vocabulary().word(w);
      std::uint64_t df = 0, cf = 0;
      for (const auto& d : docs) {
        const auto c = static_cast<std::uint64_t>(std::count(d.begin(), d.end(), word));
        cf += c;
        df += c > 0;
      }
      EXPECT_EQ(stats.df[w], df);
      EXPECT_EQ(stats.cf[w], cf);
      EXPECT_LE(stats.df[w], stats.documents);
    }
  }
}

TEST(Corpus, LabelsAreSortedAndIndexed) {
  const auto corpus = Corpus::from_tokens({{"x"}, {"y"}, {"z"}}, {"b", "a", "b"});
  EXPECT_EQ(corpus.label_set(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(corpus.label_indices(), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Corpus, UnlabeledDocumentsHaveNoLabelIndex) {
  EXPECT_THROW(Corpus::from_tokens({{"x"}}).label_indices(), Error);
}

TEST(Corpus, RejectsTokenIdsOutsideVocabulary) {
  Vocabulary v;
  v.add("a");
  Document d;
  d.id = "d";
  d.tokens = {3};
  EXPECT_THROW(Corpus(v, {d}), InvalidArgument);
}

TEST(Ingest, LengthRankKeepsLongestPerLabel) {
  std::mt19937_64 rng(3);
  std::ostringstream stream;
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> expected;
  for (int r = 0; r < 5000; ++r) {
    for (int l = 0; l < 12; ++l) {
      const std::string label = "label" + std::to_string(l);
      const std::string id = label + "-" + std::to_string(r);
      std::string text = "word";
      const auto extra = rng() % 200;
      for (std::size_t i = 0; i < extra; ++i) text += i % 7 == 0 ? ' ' : 'x';
      stream << R"({"id":")" << id << R"(","label":")" << label << R"(","text":")" << text
             << "\"}\n";
      expected[label].emplace_back(utf8_length(text), id);
    }
  }
  std::istringstream in(stream.str());
  const auto result = ingest(in, IngestOptions{});
  EXPECT_EQ(result.corpus.size(), 12000u);
  EXPECT_EQ(result.capped, 48000u);

  std::map<std::string, std::set<std::string>> got;
  for (const auto& d : result.corpus.documents()) got[*d.label].insert(d.id);
  for (auto& [label, entries] : expected) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::set<std::string> want;
    for (std::size_t i = 0; i < 1000; ++i) want.insert(entries[i].second);
    EXPECT_EQ(got[label], want) << label;
  }
}

TEST(Ingest, EmptyStreamIsAnError) {
  std::istringstream in("");
  EXPECT_THROW(ingest(in, IngestOptions{}), Error);
}

TEST(Ingest, CapAboveSupplyKeepsEverything) {
  std::istringstream in(
      "{\"text\":\"alpha beta\",\"label\":\"x\"}\n"
      "{\"text\":\"gamma delta\",\"label\":\"x\"}\n"
      "{\"text\":\"epsilon\",\"label\":\"x\"}\n");
  IngestOptions o;
  o.per_label_cap = 5;
  const auto r = ingest(in, o);
  EXPECT_EQ(r.corpus.size(), 3u);
  EXPECT_EQ(r.capped, 0u);
}

TEST(Ingest, MalformedRecordsAreSkippedAndCounted) {
  std::istringstream in(
      "{\"text\":\"alpha beta\",\"label\":\"x\"}\n"
      "not json at all\n"
      "{\"label\":\"x\"}\n"
      "{\"text\":\"the of\",\"label\":\"x\"}\n");
  IngestOptions o;
  o.tokenizer.stopwords = default_stopwords();
  const auto r = ingest(in, o);
  EXPECT_EQ(r.records, 4u);
  EXPECT_EQ(r.malformed, 2u);
  EXPECT_EQ(r.empty, 1u);
  EXPECT_EQ(r.corpus.size(), 1u);
}

TEST(Ingest, PretokenizedWithLabels) {
  std::istringstream in("sports\tball goal ball\nart\tpaint\n");
  IngestOptions o;
  o.format = InputFormat::Pretokenized;
  const auto r = ingest(in, o);
  ASSERT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.corpus.document(0).tokens.size(), 3u);
  EXPECT_EQ(*r.corpus.document(1).label, "art");
  EXPECT_EQ(r.corpus.vocabulary().size(), 3u);
}

TEST(Prune, DropsRareWordsAndEmptiedDocuments) {
  const auto corpus =
      Corpus::from_tokens({{"a", "b"}, {"a", "c"}, {"c"}, {"d"}}, {"x", "x", "y", "y"});
  const auto pruned = prune_vocabulary(corpus, 2);
  EXPECT_EQ(pruned.removed_words, 2u);
  EXPECT_EQ(pruned.removed_documents, 1u);
  EXPECT_EQ(pruned.corpus.vocabulary().size(), 2u);
  EXPECT_EQ(pruned.corpus.vocabulary().word(0), "a");
  EXPECT_EQ(pruned.corpus.vocabulary().word(1), "c");
  EXPECT_EQ(pruned.corpus.size(), 3u);
}

#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>

#include "topicfilter/archive.hpp"
#include "topicfilter/error.hpp"
#include "topicfilter/hash.hpp"

using namespace topicfilter;
namespace fs = std::filesystem;

namespace {

class ArchiveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("topicfilter-archive-" + std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  const Provenance prov_{"test", 7, "0123456789abcdef"};
};

Corpus labelled_corpus() {
  return Corpus::from_tokens({{"alpha", "beta", "alpha"}, {"gamma", "beta"}, {"delta"}},
                             {"x", "y", "x"});
}

std::uint64_t read_u64(const std::string& bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[offset + i]);
  return v;
}

}  // namespace

TEST_F(ArchiveTest, CorpusRoundTrip) {
  const auto corpus = labelled_corpus();
  write_corpus_archive(dir_, corpus, compute_stats(corpus), prov_);
  EXPECT_EQ(read_corpus_archive(dir_), corpus);
  const auto stats = read_file(dir_ / "stats.tsv");
  EXPECT_EQ(stats.rfind(prov_.comment_line(), 0), 0u);
  EXPECT_NE(stats.find("alpha\t1\t2\n"), std::string::npos);
}

TEST_F(ArchiveTest, UnlabeledCorpusRoundTrip) {
  const auto corpus = Corpus::from_tokens({{"a", "b"}, {"c"}});
  write_corpus_archive(dir_, corpus, compute_stats(corpus), prov_);
  EXPECT_EQ(read_corpus_archive(dir_), corpus);
}

TEST_F(ArchiveTest, WindowsRoundTrip) {
  const auto w = extract_windows(labelled_corpus(), 2);
  write_windows_archive(dir_, w, prov_);
  EXPECT_EQ(read_windows_archive(dir_), w);
}

TEST_F(ArchiveTest, ModelRoundTripAndBinaryLayout) {
  const auto corpus = labelled_corpus();
  LdaOptions o;
  o.topics = 2;
  o.sweeps = 4;
  o.seed = 99;
  const auto model = train_lda(corpus, o);
  write_model_archive(dir_, model, {"2L", -3.25}, prov_, 3);
  ModelInfo info;
  EXPECT_EQ(read_model_archive(dir_, &info), model);
  EXPECT_EQ(info.label, "2L");
  EXPECT_EQ(info.train_log_likelihood, -3.25);

  const auto bytes = read_file(dir_ / "model.bin");
  const std::size_t V = corpus.vocabulary().size(), N = corpus.size();
  EXPECT_EQ(bytes.substr(0, 8), "TFLDA001");
  EXPECT_EQ(read_u64(bytes, 8), 2u);
  EXPECT_EQ(read_u64(bytes, 16), V);
  EXPECT_EQ(read_u64(bytes, 24), N);
  EXPECT_EQ(std::bit_cast<double>(read_u64(bytes, 32)), model.alpha);
  EXPECT_EQ(read_u64(bytes, 48), 99u);
  EXPECT_EQ(read_u64(bytes, 56), 4u);
  EXPECT_EQ(read_u64(bytes, 64), corpus.fingerprint());
  EXPECT_EQ(std::bit_cast<double>(read_u64(bytes, 72)), model.topic_word(0, 0));
  EXPECT_EQ(bytes.size(), 72 + 8 * (2 * V + N * 2));

  const auto top = read_file(dir_ / "top_words.tsv");
  EXPECT_NE(top.find("topic_id\trank\tword\tprobability\n"), std::string::npos);
}

TEST_F(ArchiveTest, CorruptModelRejected) {
  TopicModel scratch;
  EXPECT_THROW(decode_model_binary("NOTMAGIC", scratch), ParseError);
  TopicModel m;
  m.topics = 2;
  m.topic_word = Matrix(2, 1, 0.5);
  m.doc_topic = Matrix(1, 2, 0.5);
  auto bytes = encode_model_binary(m);
  TopicModel back;
  EXPECT_NO_THROW(decode_model_binary(bytes, back));
  EXPECT_THROW(decode_model_binary(bytes + "x", back), ParseError);
  EXPECT_THROW(decode_model_binary(bytes.substr(0, bytes.size() - 1), back), ParseError);
}

TEST_F(ArchiveTest, TopicScoresRoundTrip) {
  TopicScore a;
  a.topic_id = 3;
  a.coh = 0.1 + 0.2;
  a.pal_sum = 1.0 / 3.0;
  a.specificity = a.coh * a.pal_sum;
  a.baseline_coh = -1e-17;
  a.gm = 0.5;
  a.mean_ridf = 2.25;
  a.words = {"x", "y", "z"};
  const auto text = topic_scores_tsv({a}, prov_);
  const auto back = parse_topic_scores_tsv(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], a);
}

TEST_F(ArchiveTest, MissingFileNamesPath) {
  try {
    read_file(dir_ / "nope.tsv");
    FAIL();
  } catch (const MissingArtifact& e) {
    EXPECT_NE(e.path().find("nope.tsv"), std::string::npos);
  }
}

TEST_F(ArchiveTest, AtomicWriteLeavesNoTemporary) {
  atomic_write(dir_ / "deep" / "file.txt", "hello");
  EXPECT_EQ(read_file(dir_ / "deep" / "file.txt"), "hello");
  EXPECT_FALSE(fs::exists(dir_ / "deep" / "file.txt.tmp"));
  atomic_write(dir_ / "deep" / "file.txt", "bye");
  EXPECT_EQ(read_file(dir_ / "deep" / "file.txt"), "bye");
}

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -7.554, 1e-300, 123456789.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Hash, FingerprintsDistinguishOrder) {
  EXPECT_NE(Corpus::from_tokens({{"a", "b"}}).fingerprint(),
            Corpus::from_tokens({{"b", "a"}}).fingerprint());
  EXPECT_EQ(to_hex(0xabcULL), "0000000000000abc");
}

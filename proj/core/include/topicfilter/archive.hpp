#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "topicfilter/corpus.hpp"
#include "topicfilter/embeddings.hpp"
#include "topicfilter/lda.hpp"
#include "topicfilter/scoring.hpp"
#include "topicfilter/windows.hpp"

namespace topicfilter {

namespace fs = std::filesystem;

/// Identifies the stage run that produced an artifact. Written as the first
/// line of every TSV ("# topicfilter stage=... seed=... config=...") and as
/// fields of every JSON artifact.
struct Provenance {
  std::string stage;
  std::uint64_t seed = 0;
  std::string config_hash;

  std::string comment_line() const;
};

/// Writes `content` to `path` via a sibling temporary file and a rename, so
/// readers never observe a partial file. Creates parent directories.
void atomic_write(const fs::path& path, std::string_view content);

std::string read_file(const fs::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Splits a TSV line on tabs.
std::vector<std::string_view> split_tabs(std::string_view line);

// ---------------------------------------------------------------------------
// Corpus archive: a directory holding
//   vocab.tsv      id<TAB>word
//   stats.tsv      word<TAB>df<TAB>cf
//   documents.tsv  id<TAB>label<TAB>raw_length<TAB>space-separated token ids
// An empty label column means the document is unlabeled.

void write_corpus_archive(const fs::path& dir, const Corpus& corpus, const CorpusStats& stats,
                          const Provenance& provenance);
Corpus read_corpus_archive(const fs::path& dir);

// ---------------------------------------------------------------------------
// Window archive:
//   membership.tsv  word_id<TAB>windows containing it
//   pairs.tsv       left_id<TAB>right_id<TAB>windows where left precedes right
//   meta.json       window_length, window_count, vocabulary_size

void write_windows_archive(const fs::path& dir, const ContextWindows& windows,
                           const Provenance& provenance);
ContextWindows read_windows_archive(const fs::path& dir);

// ---------------------------------------------------------------------------
// Model archive:
//   model.bin       binary matrices, layout below
//   model.json      hyperparameters, seed, sweeps, fingerprints, provenance
//   vocab.tsv       id<TAB>word
//   top_words.tsv   topic_id<TAB>rank<TAB>word<TAB>probability
//
// model.bin, all integers and IEEE-754 doubles little-endian:
//   bytes 0..7   magic "TFLDA001"
//   u64 topics, u64 vocabulary size, u64 documents
//   f64 alpha, f64 beta, u64 seed, u64 sweeps, u64 corpus fingerprint
//   f64[topics * V]         topic_word, row-major
//   f64[documents * topics] doc_topic, row-major

/// Extra metadata recorded alongside the model.
struct ModelInfo {
  std::string label;
  double train_log_likelihood = 0.0;
};

void write_model_archive(const fs::path& dir, const TopicModel& model, const ModelInfo& info,
                         const Provenance& provenance, std::size_t top_word_count = 25);
TopicModel read_model_archive(const fs::path& dir, ModelInfo* info = nullptr);

/// Encodes/decodes model.bin alone.
std::string encode_model_binary(const TopicModel& model);
void decode_model_binary(std::string_view bytes, TopicModel& model);

// ---------------------------------------------------------------------------
// Score exports

/// topic_id, coh, pal_sum, specificity, baseline_coh, gm, mean_ridf, top_words
/// (space-separated).
std::string topic_scores_tsv(const std::vector<TopicScore>& scores, const Provenance& provenance);
std::vector<TopicScore> parse_topic_scores_tsv(std::string_view text);

/// word, df, cf, ridf, pal.
std::string word_scores_tsv(std::span<const WordScores> scores, const Provenance& provenance);

}  // namespace topicfilter

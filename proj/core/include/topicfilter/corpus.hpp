#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicfilter {

using WordId = std::uint32_t;

/// Bidirectional word <-> dense id map. Ids are assigned in insertion order.
class Vocabulary {
 public:
  /// Returns the id of `word`, inserting it if unseen.
  WordId add(std::string_view word);

  std::optional<WordId> find(std::string_view word) const;
  /// Throws InvalidArgument when the word is unknown.
  WordId id(std::string_view word) const;
  const std::string& word(WordId id) const;

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::span<const std::string> words() const noexcept { return words_; }

  /// FNV-1a digest of the ordered word list.
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const Vocabulary& other) const { return words_ == other.words_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> ids_;
};

struct Document {
  std::string id;
  std::optional<std::string> label;
  std::vector<WordId> tokens;
  std::size_t raw_length = 0;

  bool operator==(const Document&) const = default;
};

/// Tokenized documents over a shared vocabulary. Immutable once built.
class Corpus {
 public:
  Corpus() = default;
  Corpus(Vocabulary vocab, std::vector<Document> docs);

  /// Builds a corpus from already tokenized documents; labels may be empty
  /// or match docs in length. Documents with no tokens are dropped.
  static Corpus from_tokens(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<std::string>& labels = {});

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  std::span<const Document> documents() const noexcept { return docs_; }
  const Document& document(std::size_t i) const { return docs_.at(i); }
  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }
  std::size_t total_tokens() const noexcept;

  /// Sorted distinct labels; unlabeled documents are not represented.
  std::vector<std::string> label_set() const;
  /// Index of each document's label within label_set(). Throws if any
  /// document is unlabeled.
  std::vector<std::size_t> label_indices() const;

  /// FNV-1a digest over vocabulary and token sequences.
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const Corpus&) const = default;

 private:
  Vocabulary vocab_;
  std::vector<Document> docs_;
};

// ---------------------------------------------------------------------------
// Tokenization

struct TokenizerConfig {
  bool lowercase = true;
  std::size_t min_token_len = 2;
  std::unordered_set<std::string> stopwords;
};

/// A short English stopword list. No claim of parity with any particular
/// toolkit's list.
std::unordered_set<std::string> default_stopwords();

/// Splits `text` into maximal alphabetic runs, optionally lowercases them,
/// and drops runs shorter than min_token_len or present in the stopword set.
/// Bytes >= 0x80 are treated as letters so UTF-8 words stay intact; only
/// ASCII letters are case-folded.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config);

// ---------------------------------------------------------------------------
// Ingestion

enum class InputFormat {
  /// One JSON object per line.
  JsonLines,
  /// One document per line, tokens separated by spaces, optional
  /// "label<TAB>" prefix. Tokens are taken verbatim.
  Pretokenized,
};

struct FieldMap {
  std::string text = "text";
  std::string label = "label";
  /// Optional document id field; documents are numbered when absent.
  std::string id = "id";
};

struct IngestOptions {
  InputFormat format = InputFormat::JsonLines;
  FieldMap fields;
  std::size_t per_label_cap = 1000;
  /// Keep the longest documents (by raw character count) per label instead
  /// of the first ones in stream order.
  bool length_rank = true;
  TokenizerConfig tokenizer;
};

struct IngestResult {
  Corpus corpus;
  std::size_t records = 0;
  std::size_t malformed = 0;
  /// Records whose token list was empty after preprocessing.
  std::size_t empty = 0;
  /// Records dropped by the per-label cap.
  std::size_t capped = 0;
};

/// Reads a record stream and builds a corpus. Malformed records are skipped
/// and counted; throws Error when nothing is retained.
IngestResult ingest(std::istream& source, const IngestOptions& options);

/// Number of Unicode code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text) noexcept;

// ---------------------------------------------------------------------------
// Statistics

struct CorpusStats {
  std::size_t documents = 0;  ///< N
  std::size_t total_tokens = 0;
  std::vector<std::uint64_t> df;  ///< indexed by WordId
  std::vector<std::uint64_t> cf;  ///< indexed by WordId

  bool operator==(const CorpusStats&) const = default;
};

/// Document and collection frequencies. Throws on an empty corpus.
CorpusStats compute_stats(const Corpus& corpus);

struct PruneResult {
  Corpus corpus;
  std::size_t removed_words = 0;
  std::size_t removed_documents = 0;
};

/// Drops words whose document frequency is below `min_df`, remapping ids in
/// their original relative order. Documents left empty are dropped.
PruneResult prune_vocabulary(const Corpus& corpus, std::size_t min_df);

}  // namespace topicfilter

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicfilter/corpus.hpp"

namespace topicfilter {

enum class NormPolicy { Raw, Unit };

/// Word -> dense vector lookup. Under NormPolicy::Unit every nonzero vector
/// is stored with Euclidean norm 1.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dimension, NormPolicy policy);

  /// Inserts or replaces a vector; returns false when `word` already existed.
  bool set(std::string_view word, std::span<const double> vector);

  /// nullopt for out-of-vocabulary words.
  std::optional<std::span<const double>> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  NormPolicy policy() const noexcept { return policy_; }
  std::span<const std::string> words() const noexcept { return words_; }

  /// Multiplies every vector by `factor`; the norm policy marker becomes Raw
  /// unless factor is 1.
  EmbeddingTable scaled(double factor) const;

  bool operator==(const EmbeddingTable& other) const {
    return dim_ == other.dim_ && policy_ == other.policy_ && words_ == other.words_ &&
           data_ == other.data_;
  }

 private:
  std::size_t dim_ = 0;
  NormPolicy policy_ = NormPolicy::Raw;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses the plain-text interchange format: a "count dim" header, then one
/// "word v1 ... vdim" line per entry. Duplicate words keep the last vector.
/// Throws ParseError with the offending line number.
EmbeddingTable load_embeddings(std::istream& in, NormPolicy policy = NormPolicy::Unit);
EmbeddingTable load_embeddings(const std::string& path, NormPolicy policy = NormPolicy::Unit);

/// Writes the interchange format with shortest round-trip number formatting.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);

/// dot(u, v) / (|u| |v|). Throws InvalidArgument on a dimension mismatch or
/// a zero-norm input.
double cosine(std::span<const double> u, std::span<const double> v);

struct SkipGramOptions {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 15;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  /// Positive (center, context) pairs in the fixed loss probe.
  std::size_t probe_pairs = 2000;
};

struct SkipGramResult {
  EmbeddingTable table;
  /// Mean negative-sampling loss on the probe batch after each epoch.
  std::vector<double> probe_loss;
};

/// Skip-gram with negative sampling over the corpus, single-threaded with a
/// fixed update order. Returns unit-normalized input vectors.
SkipGramResult train_skipgram(const Corpus& corpus, const SkipGramOptions& options);

}  // namespace topicfilter

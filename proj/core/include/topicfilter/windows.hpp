#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "topicfilter/corpus.hpp"

namespace topicfilter {

/// Support counts over all contiguous n-token windows of a corpus.
///
/// Windows never cross document boundaries. Counting uses set semantics per
/// window: a word contributes at most once to its membership count, and an
/// ordered pair (l, r) contributes at most once when some occurrence of l
/// precedes some occurrence of r inside the window. A repeated word forms
/// the self-pair (w, w).
class ContextWindows {
 public:
  struct PairCount {
    WordId right;
    std::uint64_t count;
    bool operator==(const PairCount&) const = default;
  };

  /// A (left, right, count) triple, used for serialization.
  struct PairRecord {
    WordId left;
    WordId right;
    std::uint64_t count;
  };

  ContextWindows() = default;

  /// Rebuilds a table from raw counts. Pairs may arrive in any order but
  /// must be unique; throws InvalidArgument when an invariant is violated.
  static ContextWindows from_counts(std::size_t window_length, std::uint64_t window_count,
                                    std::vector<std::uint64_t> membership,
                                    std::vector<PairRecord> pairs);

  std::size_t window_length() const noexcept { return n_; }
  std::uint64_t window_count() const noexcept { return window_count_; }
  std::size_t vocabulary_size() const noexcept { return membership_.size(); }

  /// Number of windows containing `w`; 0 for ids outside the vocabulary.
  std::uint64_t membership(WordId w) const noexcept;
  /// Number of windows in which `left` precedes `right`.
  std::uint64_t ordered(WordId left, WordId right) const noexcept;

  /// All right-hand partners of `left` with nonzero ordered count, sorted by id.
  std::span<const PairCount> partners(WordId left) const noexcept;

  std::span<const std::uint64_t> membership_counts() const noexcept { return membership_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  std::vector<PairRecord> pair_records() const;

  /// Same windows with every ordered pair reversed.
  ContextWindows transposed() const;

  bool operator==(const ContextWindows&) const = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t window_count_ = 0;
  std::vector<std::uint64_t> membership_;
  std::vector<std::size_t> offsets_;  // CSR row starts, size V + 1
  std::vector<PairCount> pairs_;
};

/// Counts support over every n-token window of every document.
/// Throws InvalidArgument when n < 2.
ContextWindows extract_windows(const Corpus& corpus, std::size_t n);

}  // namespace topicfilter

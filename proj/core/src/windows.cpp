#include "topicfilter/windows.hpp"

#include <algorithm>
#include <unordered_map>

#include "topicfilter/error.hpp"

namespace topicfilter {
namespace {

constexpr std::uint64_t pack(WordId l, WordId r) noexcept {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}

}  // namespace

ContextWindows ContextWindows::from_counts(std::size_t window_length, std::uint64_t window_count,
                                           std::vector<std::uint64_t> membership,
                                           std::vector<PairRecord> pairs) {
  if (window_length < 2) throw InvalidArgument("window length must be >= 2");
  const std::size_t V = membership.size();
  for (auto m : membership) {
    if (m > window_count) throw InvalidArgument("membership count exceeds window count");
  }
  std::sort(pairs.begin(), pairs.end(), [](const PairRecord& a, const PairRecord& b) {
    return pack(a.left, a.right) < pack(b.left, b.right);
  });

  ContextWindows out;
  out.n_ = window_length;
  out.window_count_ = window_count;
  out.offsets_.assign(V + 1, 0);
  out.pairs_.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.left >= V || p.right >= V) throw InvalidArgument("pair references unknown word id");
    if (i > 0 && pairs[i - 1].left == p.left && pairs[i - 1].right == p.right) {
      throw InvalidArgument("duplicate ordered pair");
    }
    if (p.count == 0) continue;
    if (p.count > std::min(membership[p.left], membership[p.right])) {
      throw InvalidArgument("ordered pair count exceeds a membership count");
    }
    ++out.offsets_[p.left + 1];
    out.pairs_.push_back({p.right, p.count});
  }
  for (std::size_t w = 0; w < V; ++w) out.offsets_[w + 1] += out.offsets_[w];
  out.membership_ = std::move(membership);
  return out;
}

std::uint64_t ContextWindows::membership(WordId w) const noexcept {
  return w < membership_.size() ? membership_[w] : 0;
}

std::span<const ContextWindows::PairCount> ContextWindows::partners(WordId left) const noexcept {
  if (left >= membership_.size()) return {};
  return std::span<const PairCount>(pairs_).subspan(offsets_[left],
                                                     offsets_[left + 1] - offsets_[left]);
}

std::uint64_t ContextWindows::ordered(WordId left, WordId right) const noexcept {
  const auto row = partners(left);
  auto it = std::lower_bound(row.begin(), row.end(), right,
                             [](const PairCount& p, WordId r) { return p.right < r; });
  return (it != row.end() && it->right == right) ? it->count : 0;
}

std::vector<ContextWindows::PairRecord> ContextWindows::pair_records() const {
  std::vector<PairRecord> out;
  out.reserve(pairs_.size());
  for (WordId l = 0; l < membership_.size(); ++l) {
    for (const auto& p : partners(l)) out.push_back({l, p.right, p.count});
  }
  return out;
}

ContextWindows ContextWindows::transposed() const {
  auto records = pair_records();
  for (auto& r : records) std::swap(r.left, r.right);
  return from_counts(n_, window_count_, membership_, std::move(records));
}

ContextWindows extract_windows(const Corpus& corpus, std::size_t n) {
  if (n < 2) throw InvalidArgument("window length must be >= 2");
  const std::size_t V = corpus.vocabulary().size();

  std::uint64_t window_count = 0;
  std::vector<std::uint64_t> membership(V, 0);
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;

  std::vector<WordId> distinct;
  std::vector<std::uint64_t> window_pairs;
  distinct.reserve(n);
  window_pairs.reserve(n * (n - 1) / 2);

  for (const auto& doc : corpus.documents()) {
    const auto& t = doc.tokens;
    if (t.size() < n) continue;
    for (std::size_t s = 0; s + n <= t.size(); ++s) {
      ++window_count;

      distinct.assign(t.begin() + s, t.begin() + s + n);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (WordId w : distinct) ++membership[w];

      window_pairs.clear();
      for (std::size_t i = s; i < s + n; ++i) {
        for (std::size_t j = i + 1; j < s + n; ++j) window_pairs.push_back(pack(t[i], t[j]));
      }
      std::sort(window_pairs.begin(), window_pairs.end());
      window_pairs.erase(std::unique(window_pairs.begin(), window_pairs.end()),
                         window_pairs.end());
      for (auto key : window_pairs) ++pair_counts[key];
    }
  }

  std::vector<ContextWindows::PairRecord> records;
  records.reserve(pair_counts.size());
  for (const auto& [key, count] : pair_counts) {
    records.push_back({static_cast<WordId>(key >> 32), static_cast<WordId>(key & 0xffffffffu),
                       count});
  }
  return ContextWindows::from_counts(n, window_count, std::move(membership), std::move(records));
}

}  // namespace topicfilter

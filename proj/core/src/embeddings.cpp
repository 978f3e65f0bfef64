#include "topicfilter/embeddings.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include <spdlog/spdlog.h>

#include "topicfilter/error.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter {

EmbeddingTable::EmbeddingTable(std::size_t dimension, NormPolicy policy)
    : dim_(dimension), policy_(policy) {
  if (dimension == 0) throw InvalidArgument("embedding dimension must be >= 1");
}

bool EmbeddingTable::set(std::string_view word, std::span<const double> vector) {
  if (vector.size() != dim_) throw InvalidArgument("embedding has wrong dimension");
  double scale = 1.0;
  if (policy_ == NormPolicy::Unit) {
    const double norm = std::sqrt(std::inner_product(vector.begin(), vector.end(),
                                                     vector.begin(), 0.0));
    if (norm > 0.0) scale = 1.0 / norm;
  }

  std::size_t slot;
  bool inserted = true;
  if (auto it = index_.find(std::string(word)); it != index_.end()) {
    slot = it->second;
    inserted = false;
  } else {
    slot = words_.size();
    words_.emplace_back(word);
    index_.emplace(words_.back(), slot);
    data_.resize(data_.size() + dim_);
  }
  for (std::size_t i = 0; i < dim_; ++i) data_[slot * dim_ + i] = vector[i] * scale;
  return inserted;
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_).subspan(it->second * dim_, dim_);
}

EmbeddingTable EmbeddingTable::scaled(double factor) const {
  EmbeddingTable out = *this;
  for (double& x : out.data_) x *= factor;
  if (factor != 1.0) out.policy_ = NormPolicy::Raw;
  return out;
}

// ---------------------------------------------------------------------------
// Interchange format

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable load_embeddings(std::istream& in, NormPolicy policy) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  std::size_t dim = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != 2 || !parse_number(fields[0], count) || !parse_number(fields[1], dim) ||
        dim == 0) {
      throw ParseError("embedding header must be \"count dim\"", line_no);
    }
    break;
  }
  if (dim == 0) throw ParseError("empty embedding file", 0);

  EmbeddingTable table(dim, policy);
  std::vector<double> vec(dim);
  std::size_t entries = 0;
  std::size_t duplicates = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError("expected a word and " + std::to_string(dim) + " numbers, got " +
                           std::to_string(fields.size() - 1),
                       line_no);
    }
    if (entries == count) throw ParseError("more entries than the header declares", line_no);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_number(fields[i + 1], vec[i])) throw ParseError("invalid number", line_no);
    }
    if (!table.set(fields[0], vec)) ++duplicates;
    ++entries;
  }
  if (entries != count) {
    throw ParseError("header declares " + std::to_string(count) + " entries, found " +
                         std::to_string(entries),
                     line_no);
  }
  if (duplicates > 0) spdlog::warn("embeddings: {} duplicate word(s), last vector kept", duplicates);
  return table;
}

EmbeddingTable load_embeddings(const std::string& path, NormPolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file " + path);
  return load_embeddings(in, policy);
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dimension() << '\n';
  std::array<char, 32> buf{};
  for (const auto& w : table.words()) {
    out << w;
    const auto vec = *table.find(w);
    for (double x : vec) {
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      out << ' ' << std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data()));
    }
    out << '\n';
  }
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidArgument("cosine of vectors with different dimensions");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw InvalidArgument("cosine of a zero-norm vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Skip-gram with negative sampling

namespace {

constexpr std::uint64_t kProbeStream = 0x50524f4245ULL;

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

class NoiseDistribution {
 public:
  explicit NoiseDistribution(const std::vector<std::uint64_t>& counts) {
    cumulative_.resize(counts.size());
    double acc = 0.0;
    for (std::size_t w = 0; w < counts.size(); ++w) {
      acc += std::pow(static_cast<double>(counts[w]), 0.75);
      cumulative_[w] = acc;
    }
  }

  WordId sample(std::mt19937_64& rng) const {
    const double target = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    return static_cast<WordId>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct ProbeExample {
  WordId center;
  WordId context;
  std::vector<WordId> negatives;
};

}  // namespace

SkipGramResult train_skipgram(const Corpus& corpus, const SkipGramOptions& options) {
  if (corpus.empty()) throw InvalidArgument("skip-gram needs a non-empty corpus");
  if (options.dimension < 2) throw InvalidArgument("skip-gram dimension must be >= 2");
  if (options.window < 1) throw InvalidArgument("skip-gram window must be >= 1");
  if (options.negatives < 1) throw InvalidArgument("skip-gram needs >= 1 negative sample");
  if (options.epochs < 1) throw InvalidArgument("skip-gram needs >= 1 epoch");
  if (!(options.learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");

  const std::size_t V = corpus.vocabulary().size();
  const std::size_t d = options.dimension;
  if (V < options.negatives + 1) {
    throw InvalidArgument("vocabulary smaller than negatives + 1");
  }

  std::vector<std::uint64_t> counts(V, 0);
  for (const auto& doc : corpus.documents()) {
    for (WordId t : doc.tokens) ++counts[t];
  }
  const NoiseDistribution noise(counts);

  auto rng = make_rng(options.seed);
  std::vector<double> input(V * d);
  std::vector<double> output(V * d, 0.0);
  for (double& x : input) x = (uniform01(rng) - 0.5) / static_cast<double>(d);

  // Fixed probe batch drawn from its own stream so training draws are unaffected.
  std::vector<ProbeExample> probe;
  {
    auto probe_rng = make_rng(options.seed, kProbeStream);
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus.document(i).tokens.size() >= 2) eligible.push_back(i);
    }
    for (std::size_t p = 0; p < options.probe_pairs && !eligible.empty(); ++p) {
      const auto& toks = corpus.document(eligible[probe_rng() % eligible.size()]).tokens;
      const std::size_t i = probe_rng() % toks.size();
      const std::size_t lo = i >= options.window ? i - options.window : 0;
      const std::size_t hi = std::min(toks.size() - 1, i + options.window);
      std::size_t j = lo + probe_rng() % (hi - lo);
      if (j >= i) ++j;
      ProbeExample ex{toks[i], toks[j], {}};
      for (std::size_t n = 0; n < options.negatives; ++n) ex.negatives.push_back(noise.sample(probe_rng));
      probe.push_back(std::move(ex));
    }
  }
  auto probe_loss = [&] {
    if (probe.empty()) return 0.0;
    double loss = 0.0;
    for (const auto& ex : probe) {
      const double* u = &input[ex.center * d];
      auto score = [&](WordId c) {
        const double* v = &output[c * d];
        return std::inner_product(u, u + d, v, 0.0);
      };
      loss -= log_sigmoid(score(ex.context));
      for (WordId n : ex.negatives) loss -= log_sigmoid(-score(n));
    }
    return loss / static_cast<double>(probe.size());
  };

  const double total_steps =
      static_cast<double>(options.epochs) * static_cast<double>(corpus.total_tokens());
  double steps = 0.0;
  std::vector<double> grad(d);

  auto update = [&](WordId center, WordId target, double label, double lr) {
    double* u = &input[center * d];
    double* v = &output[target * d];
    const double g = (label - sigmoid(std::inner_product(u, u + d, v, 0.0))) * lr;
    for (std::size_t k = 0; k < d; ++k) {
      grad[k] += g * v[k];
      v[k] += g * u[k];
    }
  };

  SkipGramResult result;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    for (const auto& doc : corpus.documents()) {
      const auto& toks = doc.tokens;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        const double lr =
            options.learning_rate * std::max(1e-4, 1.0 - steps / total_steps);
        steps += 1.0;
        const std::size_t reach = 1 + rng() % options.window;
        const std::size_t lo = i >= reach ? i - reach : 0;
        const std::size_t hi = std::min(toks.size() - 1, i + reach);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          std::fill(grad.begin(), grad.end(), 0.0);
          update(toks[i], toks[j], 1.0, lr);
          for (std::size_t n = 0; n < options.negatives; ++n) {
            const WordId neg = noise.sample(rng);
            if (neg == toks[j]) continue;
            update(toks[i], neg, 0.0, lr);
          }
          double* u = &input[toks[i] * d];
          for (std::size_t k = 0; k < d; ++k) u[k] += grad[k];
        }
      }
    }
    result.probe_loss.push_back(probe_loss());
  }

  result.table = EmbeddingTable(d, NormPolicy::Unit);
  for (WordId w = 0; w < V; ++w) {
    result.table.set(corpus.vocabulary().word(w),
                     std::span<const double>(input).subspan(w * d, d));
  }
  return result;
}

}  // namespace topicfilter

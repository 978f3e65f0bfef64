#include "topicfilter/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "topicfilter/embeddings.hpp"
#include "topicfilter/error.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter {
namespace {

class WordFactory {
 public:
  explicit WordFactory(std::uint64_t seed) : rng_(make_rng(seed, 0x574f5244ULL)) {}

  std::string make(std::size_t min_syllables, std::size_t max_syllables) {
    static constexpr std::string_view kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                                   "p", "r", "s", "t", "v", "z", "br", "tr",
                                                   "st", "kl", "pr", "gr"};
    static constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    while (true) {
      const std::size_t n = min_syllables + rng_() % (max_syllables - min_syllables + 1);
      std::string w;
      for (std::size_t i = 0; i < n; ++i) {
        w += kOnsets[rng_() % std::size(kOnsets)];
        w += kVowels[rng_() % std::size(kVowels)];
      }
      if (used_.insert(w).second) return w;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::unordered_set<std::string> used_;
};

// Cumulative Zipf-like weights 1 / (rank + 1)^exponent.
std::vector<double> zipf_cumulative(std::size_t n, double exponent) {
  std::vector<double> c(n);
  double acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    c[r] = acc;
  }
  return c;
}

std::size_t draw(const std::vector<double>& cumulative, std::mt19937_64& rng) {
  const double t = uniform01(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), t);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> dirichlet(std::size_t n, double concentration, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(n);
  double sum = 0.0;
  for (auto& x : v) {
    x = gamma(rng);
    sum += x;
  }
  if (sum <= 0.0) {
    v.assign(n, 1.0 / static_cast<double>(n));
    return v;
  }
  for (auto& x : v) x /= sum;
  return v;
}

}  // namespace

std::vector<ToyRecord> generate_toy_corpus(const ToyCorpusOptions& o) {
  if (o.categories < 2 || o.docs_per_category < 1 || o.themes_per_category < 1 ||
      o.words_per_theme < 2 || o.background_words < 1 || o.min_length < 1 ||
      o.max_length < o.min_length) {
    throw InvalidArgument("invalid toy corpus options");
  }
  WordFactory words(o.seed);
  std::vector<std::vector<std::vector<std::string>>> themes(o.categories);
  for (auto& category : themes) {
    category.resize(o.themes_per_category);
    for (auto& theme : category) {
      for (std::size_t i = 0; i < o.words_per_theme; ++i) theme.push_back(words.make(2, 3));
    }
  }
  std::vector<std::string> background;
  for (std::size_t i = 0; i < o.background_words; ++i) background.push_back(words.make(2, 3));

  const auto theme_weights = zipf_cumulative(o.words_per_theme, 0.8);
  const auto background_weights = zipf_cumulative(o.background_words, 1.0);
  static constexpr std::string_view kFillers[] = {"the", "and", "of", "with", "a", "it"};

  auto rng = make_rng(o.seed, 0x544f59ULL);
  std::vector<ToyRecord> out;
  out.reserve(o.categories * o.docs_per_category);
  for (std::size_t d = 0; d < o.docs_per_category; ++d) {
    for (std::size_t c = 0; c < o.categories; ++c) {
      const std::size_t main_theme = rng() % o.themes_per_category;
      const std::size_t side_theme =
          uniform01(rng) < 0.3 ? rng() % o.themes_per_category : main_theme;
      const std::size_t length = o.min_length + rng() % (o.max_length - o.min_length + 1);

      std::vector<std::string> tokens;
      tokens.push_back(words.make(3, 4));  // name-like singleton
      while (tokens.size() < length) {
        if (uniform01(rng) < o.phrase_rate) {
          const auto& theme = themes[c][uniform01(rng) < 0.75 ? main_theme : side_theme];
          const std::size_t phrase = 2 + rng() % 2;
          for (std::size_t i = 0; i < phrase; ++i) tokens.push_back(theme[draw(theme_weights, rng)]);
        } else {
          tokens.push_back(background[draw(background_weights, rng)]);
        }
      }
      std::swap(tokens[0], tokens[rng() % tokens.size()]);

      std::string text;
      bool sentence_start = true;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        if (uniform01(rng) < 0.08) {
          text += kFillers[rng() % std::size(kFillers)];
          text += ' ';
        }
        std::string w = tokens[i];
        if (sentence_start) w[0] = static_cast<char>(w[0] - 'a' + 'A');
        text += w;
        sentence_start = uniform01(rng) < 0.1;
        if (sentence_start) text += '.';
      }
      text += '.';

      ToyRecord r;
      r.id = "c" + std::to_string(c) + "-" + std::to_string(d);
      r.label = "category-" + std::to_string(c);
      r.text = std::move(text);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string to_json_lines(const std::vector<ToyRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["label"] = r.label;
    j["text"] = r.text;
    out += j.dump();
    out += '\n';
  }
  return out;
}

PlantedTopics generate_planted_topics(const PlantedTopicOptions& o) {
  if (o.topics < 1 || o.documents < 1 || o.vocabulary < 2 || o.doc_length < 1) {
    throw InvalidArgument("invalid planted topic options");
  }
  auto rng = make_rng(o.seed, 0x504c414eULL);
  Vocabulary vocab;
  for (std::size_t w = 0; w < o.vocabulary; ++w) {
    const auto digits = std::to_string(w);
    vocab.add("w" + std::string(digits.size() < 4 ? 4 - digits.size() : 0, '0') + digits);
  }

  PlantedTopics out;
  out.topic_word = Matrix(o.topics, o.vocabulary);
  std::vector<std::vector<double>> cumulative(o.topics);
  for (std::size_t k = 0; k < o.topics; ++k) {
    const auto phi = dirichlet(o.vocabulary, o.beta, rng);
    std::copy(phi.begin(), phi.end(), out.topic_word.row(k).begin());
    cumulative[k].resize(o.vocabulary);
    std::partial_sum(phi.begin(), phi.end(), cumulative[k].begin());
  }

  std::vector<Document> docs;
  docs.reserve(o.documents);
  for (std::size_t d = 0; d < o.documents; ++d) {
    const auto theta = dirichlet(o.topics, o.alpha, rng);
    std::vector<double> theta_c(o.topics);
    std::partial_sum(theta.begin(), theta.end(), theta_c.begin());
    Document doc;
    doc.id = "doc" + std::to_string(d);
    for (std::size_t i = 0; i < o.doc_length; ++i) {
      const auto k = draw(theta_c, rng);
      doc.tokens.push_back(static_cast<WordId>(draw(cumulative[k], rng)));
    }
    doc.raw_length = o.doc_length;
    docs.push_back(std::move(doc));
  }
  out.corpus = Corpus(std::move(vocab), std::move(docs));
  return out;
}

double greedy_matched_cosine(const Matrix& learned, const Matrix& planted) {
  if (learned.cols() != planted.cols()) throw InvalidArgument("column count mismatch");
  struct Pair {
    double sim;
    std::size_t l, p;
  };
  std::vector<Pair> pairs;
  for (std::size_t l = 0; l < learned.rows(); ++l) {
    for (std::size_t p = 0; p < planted.rows(); ++p) {
      pairs.push_back({cosine(learned.row(l), planted.row(p)), l, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return std::tie(a.l, a.p) < std::tie(b.l, b.p);
  });
  std::vector<bool> used_l(learned.rows(), false), used_p(planted.rows(), false);
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& pr : pairs) {
    if (used_l[pr.l] || used_p[pr.p]) continue;
    used_l[pr.l] = used_p[pr.p] = true;
    sum += pr.sim;
    ++matched;
  }
  return matched ? sum / static_cast<double>(matched) : 0.0;
}

}  // namespace topicfilter

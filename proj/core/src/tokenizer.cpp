#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "topicfilter/corpus.hpp"

namespace topicfilter {
namespace {

bool is_word_byte(unsigned char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::unordered_set<std::string> default_stopwords() {
  return {"a",     "about", "above", "after", "again", "against", "all",   "am",    "an",
          "and",   "any",   "are",   "as",    "at",    "be",      "because", "been", "before",
          "being", "below", "between", "both", "but",  "by",      "can",   "could", "did",
          "do",    "does",  "doing", "down",  "during", "each",   "few",   "for",   "from",
          "further", "had", "has",   "have",  "having", "he",     "her",   "here",  "hers",
          "herself", "him", "himself", "his", "how",   "if",      "in",    "into",  "is",
          "it",    "its",   "itself", "just", "me",    "more",    "most",  "my",    "myself",
          "no",    "nor",   "not",   "now",   "of",    "off",     "on",    "once",  "only",
          "or",    "other", "our",   "ours",  "ourselves", "out", "over",  "own",   "same",
          "she",   "should", "so",   "some",  "such",  "than",    "that",  "the",   "their",
          "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those",
          "through", "to",  "too",   "under", "until", "up",      "very",  "was",   "we",
          "were",  "what",  "when",  "where", "which", "while",   "who",   "whom",  "why",
          "will",  "with",  "would", "you",   "your",  "yours",   "yourself", "yourselves"};
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) continue;

    std::string token(text.substr(start, i - start));
    if (config.lowercase) {
      for (char& c : token) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
    }
    if (utf8_length(token) < config.min_token_len) continue;
    if (config.stopwords.contains(token)) continue;
    out.push_back(std::move(token));
  }
  return out;
}

std::size_t utf8_length(std::string_view text) noexcept {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace topicfilter

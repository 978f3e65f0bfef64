#include "topicfilter/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "topicfilter/error.hpp"
#include "topicfilter/hash.hpp"

namespace topicfilter {

// ---------------------------------------------------------------------------
// Vocabulary

WordId Vocabulary::add(std::string_view word) {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  return std::nullopt;
}

WordId Vocabulary::id(std::string_view word) const {
  if (auto found = find(word)) return *found;
  throw InvalidArgument("word not in vocabulary: " + std::string(word));
}

const std::string& Vocabulary::word(WordId id) const {
  if (id >= words_.size()) throw InvalidArgument("word id out of range: " + std::to_string(id));
  return words_[id];
}

std::uint64_t Vocabulary::fingerprint() const noexcept {
  Fnv1a h;
  for (const auto& w : words_) {
    h.update(w);
    h.update_byte(0);
  }
  return h.digest();
}

// ---------------------------------------------------------------------------
// Corpus

Corpus::Corpus(Vocabulary vocab, std::vector<Document> docs)
    : vocab_(std::move(vocab)), docs_(std::move(docs)) {
  for (const auto& d : docs_) {
    for (WordId t : d.tokens) {
      if (t >= vocab_.size()) {
        throw InvalidArgument("document " + d.id + " references unknown word id " +
                              std::to_string(t));
      }
    }
  }
}

Corpus Corpus::from_tokens(const std::vector<std::vector<std::string>>& docs,
                           const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != docs.size()) {
    throw InvalidArgument("label count does not match document count");
  }
  Vocabulary vocab;
  std::vector<Document> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].empty()) continue;
    Document d;
    d.id = "doc" + std::to_string(i);
    if (!labels.empty()) d.label = labels[i];
    d.tokens.reserve(docs[i].size());
    for (const auto& t : docs[i]) {
      d.tokens.push_back(vocab.add(t));
      d.raw_length += utf8_length(t) + 1;
    }
    out.push_back(std::move(d));
  }
  return Corpus(std::move(vocab), std::move(out));
}

std::size_t Corpus::total_tokens() const noexcept {
  std::size_t n = 0;
  for (const auto& d : docs_) n += d.tokens.size();
  return n;
}

std::vector<std::string> Corpus::label_set() const {
  std::set<std::string> labels;
  for (const auto& d : docs_) {
    if (d.label) labels.insert(*d.label);
  }
  return {labels.begin(), labels.end()};
}

std::vector<std::size_t> Corpus::label_indices() const {
  const auto labels = label_set();
  std::vector<std::size_t> out;
  out.reserve(docs_.size());
  for (const auto& d : docs_) {
    if (!d.label) throw InvalidArgument("document " + d.id + " has no label");
    auto it = std::lower_bound(labels.begin(), labels.end(), *d.label);
    out.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return out;
}

std::uint64_t Corpus::fingerprint() const noexcept {
  Fnv1a h;
  h.update_u64(vocab_.fingerprint());
  for (const auto& d : docs_) {
    h.update_u64(d.tokens.size());
    for (WordId t : d.tokens) h.update_u64(t);
  }
  return h.digest();
}

// ---------------------------------------------------------------------------
// Ingestion

namespace {

struct Record {
  std::string id;
  std::optional<std::string> label;
  std::vector<std::string> tokens;
  std::size_t raw_length = 0;
};

std::optional<Record> parse_json_record(const std::string& line, const IngestOptions& options,
                                        std::size_t index) {
  auto json = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (json.is_discarded() || !json.is_object()) return std::nullopt;
  auto text_it = json.find(options.fields.text);
  if (text_it == json.end() || !text_it->is_string()) return std::nullopt;

  Record r;
  const auto& text = text_it->get_ref<const std::string&>();
  r.raw_length = utf8_length(text);
  r.tokens = tokenize(text, options.tokenizer);

  if (auto it = json.find(options.fields.label); it != json.end() && !it->is_null()) {
    if (it->is_string()) {
      r.label = it->get<std::string>();
    } else if (it->is_number()) {
      r.label = it->dump();
    } else {
      return std::nullopt;
    }
  }
  if (auto it = json.find(options.fields.id); it != json.end() && !it->is_null()) {
    r.id = it->is_string() ? it->get<std::string>() : it->dump();
  } else {
    r.id = "doc" + std::to_string(index);
  }
  return r;
}

Record parse_pretokenized_record(const std::string& line, std::size_t index) {
  Record r;
  r.id = "doc" + std::to_string(index);
  std::string_view body = line;
  if (auto tab = body.find('\t'); tab != std::string_view::npos) {
    r.label = std::string(body.substr(0, tab));
    body.remove_prefix(tab + 1);
  }
  r.raw_length = utf8_length(body);
  std::istringstream in{std::string(body)};
  std::string tok;
  while (in >> tok) r.tokens.push_back(std::move(tok));
  return r;
}

}  // namespace

IngestResult ingest(std::istream& source, const IngestOptions& options) {
  if (options.per_label_cap < 1) throw InvalidArgument("per_label_cap must be >= 1");

  IngestResult result;
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++result.records;

    std::optional<Record> rec;
    if (options.format == InputFormat::JsonLines) {
      rec = parse_json_record(line, options, result.records - 1);
    } else {
      rec = parse_pretokenized_record(line, result.records - 1);
    }
    if (!rec) {
      ++result.malformed;
      spdlog::debug("skipping malformed record at line {}", line_no);
      continue;
    }
    if (rec->tokens.empty()) {
      ++result.empty;
      continue;
    }
    records.push_back(std::move(*rec));
  }
  if (result.malformed > 0) {
    spdlog::warn("ingest: skipped {} malformed record(s)", result.malformed);
  }

  // Group by label (unlabeled records form their own group) and apply the cap.
  std::map<std::optional<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) groups[records[i].label].push_back(i);

  std::vector<bool> keep(records.size(), false);
  for (auto& [label, members] : groups) {
    if (options.length_rank) {
      std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return records[a].raw_length > records[b].raw_length;
      });
    }
    const std::size_t n = std::min(members.size(), options.per_label_cap);
    for (std::size_t k = 0; k < n; ++k) keep[members[k]] = true;
    result.capped += members.size() - n;
  }

  Vocabulary vocab;
  std::vector<Document> docs;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!keep[i]) continue;
    auto& r = records[i];
    Document d;
    d.id = std::move(r.id);
    d.label = std::move(r.label);
    d.raw_length = r.raw_length;
    d.tokens.reserve(r.tokens.size());
    for (const auto& t : r.tokens) d.tokens.push_back(vocab.add(t));
    docs.push_back(std::move(d));
  }
  if (docs.empty()) throw Error("ingestion retained no documents");

  result.corpus = Corpus(std::move(vocab), std::move(docs));
  return result;
}

// ---------------------------------------------------------------------------
// Statistics

CorpusStats compute_stats(const Corpus& corpus) {
  if (corpus.empty()) throw InvalidArgument("cannot compute statistics of an empty corpus");
  const std::size_t V = corpus.vocabulary().size();
  CorpusStats stats;
  stats.documents = corpus.size();
  stats.df.assign(V, 0);
  stats.cf.assign(V, 0);

  std::vector<std::size_t> last_seen(V, static_cast<std::size_t>(-1));
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (WordId t : corpus.document(d).tokens) {
      ++stats.cf[t];
      if (last_seen[t] != d) {
        last_seen[t] = d;
        ++stats.df[t];
      }
    }
    stats.total_tokens += corpus.document(d).tokens.size();
  }
  return stats;
}

PruneResult prune_vocabulary(const Corpus& corpus, std::size_t min_df) {
  PruneResult result;
  if (corpus.empty() || min_df <= 1) {
    result.corpus = corpus;
    return result;
  }
  const auto stats = compute_stats(corpus);
  const auto& old_vocab = corpus.vocabulary();

  constexpr WordId kDropped = static_cast<WordId>(-1);
  std::vector<WordId> remap(old_vocab.size(), kDropped);
  Vocabulary vocab;
  for (WordId w = 0; w < old_vocab.size(); ++w) {
    if (stats.df[w] >= min_df) {
      remap[w] = vocab.add(old_vocab.word(w));
    } else {
      ++result.removed_words;
    }
  }

  std::vector<Document> docs;
  for (const auto& d : corpus.documents()) {
    Document nd{d.id, d.label, {}, d.raw_length};
    for (WordId t : d.tokens) {
      if (remap[t] != kDropped) nd.tokens.push_back(remap[t]);
    }
    if (nd.tokens.empty()) {
      ++result.removed_documents;
      continue;
    }
    docs.push_back(std::move(nd));
  }
  result.corpus = Corpus(std::move(vocab), std::move(docs));
  return result;
}

}  // namespace topicfilter

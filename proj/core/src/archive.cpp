#include "topicfilter/archive.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "topicfilter/error.hpp"
#include "topicfilter/hash.hpp"

namespace topicfilter {

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string Provenance::comment_line() const {
  return "# topicfilter stage=" + stage + " seed=" + std::to_string(seed) +
         " config=" + config_hash + "\n";
}

void atomic_write(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifact(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

namespace {

// Data lines of a TSV: skips the provenance comment and the column header.
std::vector<std::string_view> data_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    start = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    lines.push_back(line);
  }
  return lines;
}

template <typename T>
T parse_field(std::string_view s, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  }
  return value;
}

std::string clean_field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string vocab_tsv(const Vocabulary& vocab, const Provenance& provenance) {
  std::string out = provenance.comment_line() + "id\tword\n";
  for (WordId w = 0; w < vocab.size(); ++w) {
    out += std::to_string(w) + '\t' + vocab.word(w) + '\n';
  }
  return out;
}

Vocabulary parse_vocab_tsv(std::string_view text) {
  Vocabulary vocab;
  std::size_t row = 0;
  for (auto line : data_lines(text)) {
    ++row;
    const auto f = split_tabs(line);
    if (f.size() != 2) throw ParseError("vocab.tsv: expected 2 columns", row);
    if (parse_field<WordId>(f[0], row, "word id") != vocab.size()) {
      throw ParseError("vocab.tsv: ids must be dense and ordered", row);
    }
    vocab.add(f[1]);
  }
  return vocab;
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    if (pos_ + 8 > bytes_.size()) throw ParseError("model.bin: truncated", 0);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw ParseError("model.bin: truncated", 0);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kModelMagic = "TFLDA001";

}  // namespace

// ---------------------------------------------------------------------------

void write_corpus_archive(const fs::path& dir, const Corpus& corpus, const CorpusStats& stats,
                          const Provenance& provenance) {
  const auto& vocab = corpus.vocabulary();
  atomic_write(dir / "vocab.tsv", vocab_tsv(vocab, provenance));

  std::string st = provenance.comment_line() + "word\tdf\tcf\n";
  for (WordId w = 0; w < vocab.size(); ++w) {
    st += vocab.word(w) + '\t' + std::to_string(stats.df[w]) + '\t' + std::to_string(stats.cf[w]) +
          '\n';
  }
  atomic_write(dir / "stats.tsv", st);

  std::string docs = provenance.comment_line() + "id\tlabel\traw_length\ttokens\n";
  for (const auto& d : corpus.documents()) {
    docs += clean_field(d.id) + '\t' + (d.label ? clean_field(*d.label) : std::string()) + '\t' +
            std::to_string(d.raw_length) + '\t';
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) docs += ' ';
      docs += std::to_string(d.tokens[i]);
    }
    docs += '\n';
  }
  atomic_write(dir / "documents.tsv", docs);
}

Corpus read_corpus_archive(const fs::path& dir) {
  auto vocab = parse_vocab_tsv(read_file(dir / "vocab.tsv"));
  const auto text = read_file(dir / "documents.tsv");
  std::vector<Document> docs;
  std::size_t row = 0;
  for (auto line : data_lines(text)) {
    ++row;
    const auto f = split_tabs(line);
    if (f.size() != 4) throw ParseError("documents.tsv: expected 4 columns", row);
    Document d;
    d.id = std::string(f[0]);
    if (!f[1].empty()) d.label = std::string(f[1]);
    d.raw_length = parse_field<std::size_t>(f[2], row, "raw length");
    std::size_t start = 0;
    const auto toks = f[3];
    while (start < toks.size()) {
      auto sp = toks.find(' ', start);
      if (sp == std::string_view::npos) sp = toks.size();
      if (sp > start) d.tokens.push_back(parse_field<WordId>(toks.substr(start, sp - start), row, "token id"));
      start = sp + 1;
    }
    docs.push_back(std::move(d));
  }
  return Corpus(std::move(vocab), std::move(docs));
}

// ---------------------------------------------------------------------------

void write_windows_archive(const fs::path& dir, const ContextWindows& windows,
                           const Provenance& provenance) {
  std::string mem = provenance.comment_line() + "word_id\tcount\n";
  const auto counts = windows.membership_counts();
  for (std::size_t w = 0; w < counts.size(); ++w) {
    mem += std::to_string(w) + '\t' + std::to_string(counts[w]) + '\n';
  }
  atomic_write(dir / "membership.tsv", mem);

  std::string pairs = provenance.comment_line() + "left_id\tright_id\tcount\n";
  for (const auto& p : windows.pair_records()) {
    pairs += std::to_string(p.left) + '\t' + std::to_string(p.right) + '\t' +
             std::to_string(p.count) + '\n';
  }
  atomic_write(dir / "pairs.tsv", pairs);

  nlohmann::ordered_json meta;
  meta["stage"] = provenance.stage;
  meta["seed"] = provenance.seed;
  meta["config_hash"] = provenance.config_hash;
  meta["window_length"] = windows.window_length();
  meta["window_count"] = windows.window_count();
  meta["vocabulary_size"] = windows.vocabulary_size();
  atomic_write(dir / "meta.json", meta.dump(2) + "\n");
}

ContextWindows read_windows_archive(const fs::path& dir) {
  const auto meta = nlohmann::json::parse(read_file(dir / "meta.json"));
  const std::size_t n = meta.at("window_length").get<std::size_t>();
  const std::uint64_t count = meta.at("window_count").get<std::uint64_t>();
  const std::size_t V = meta.at("vocabulary_size").get<std::size_t>();

  std::vector<std::uint64_t> membership(V, 0);
  std::size_t row = 0;
  const auto membership_text = read_file(dir / "membership.tsv");
  for (auto line : data_lines(membership_text)) {
    ++row;
    const auto f = split_tabs(line);
    if (f.size() != 2) throw ParseError("membership.tsv: expected 2 columns", row);
    const auto w = parse_field<std::size_t>(f[0], row, "word id");
    if (w >= V) throw ParseError("membership.tsv: word id out of range", row);
    membership[w] = parse_field<std::uint64_t>(f[1], row, "count");
  }

  std::vector<ContextWindows::PairRecord> pairs;
  row = 0;
  const auto pairs_text = read_file(dir / "pairs.tsv");
  for (auto line : data_lines(pairs_text)) {
    ++row;
    const auto f = split_tabs(line);
    if (f.size() != 3) throw ParseError("pairs.tsv: expected 3 columns", row);
    pairs.push_back({parse_field<WordId>(f[0], row, "left id"),
                     parse_field<WordId>(f[1], row, "right id"),
                     parse_field<std::uint64_t>(f[2], row, "count")});
  }
  return ContextWindows::from_counts(n, count, std::move(membership), std::move(pairs));
}

// ---------------------------------------------------------------------------

std::string encode_model_binary(const TopicModel& m) {
  std::string out(kModelMagic);
  put_u64(out, m.topics);
  put_u64(out, m.vocabulary_size());
  put_u64(out, m.doc_topic.rows());
  put_f64(out, m.alpha);
  put_f64(out, m.beta);
  put_u64(out, m.seed);
  put_u64(out, m.sweeps);
  put_u64(out, m.corpus_fingerprint);
  for (double x : m.topic_word.data()) put_f64(out, x);
  for (double x : m.doc_topic.data()) put_f64(out, x);
  return out;
}

void decode_model_binary(std::string_view bytes, TopicModel& m) {
  ByteReader in(bytes);
  if (in.take(kModelMagic.size()) != kModelMagic) throw ParseError("model.bin: bad magic", 0);
  m.topics = in.u64();
  const std::size_t V = in.u64();
  const std::size_t N = in.u64();
  m.alpha = in.f64();
  m.beta = in.f64();
  m.seed = in.u64();
  m.sweeps = in.u64();
  m.corpus_fingerprint = in.u64();
  m.topic_word = Matrix(m.topics, V);
  for (double& x : m.topic_word.data()) x = in.f64();
  m.doc_topic = Matrix(N, m.topics);
  for (double& x : m.doc_topic.data()) x = in.f64();
  if (!in.done()) throw ParseError("model.bin: trailing bytes", 0);
}

void write_model_archive(const fs::path& dir, const TopicModel& model, const ModelInfo& info,
                         const Provenance& provenance, std::size_t top_word_count) {
  atomic_write(dir / "model.bin", encode_model_binary(model));
  atomic_write(dir / "vocab.tsv", vocab_tsv(model.vocabulary, provenance));

  std::string tw = provenance.comment_line() + "topic_id\trank\tword\tprobability\n";
  for (const auto& topic : all_top_words(model, top_word_count)) {
    for (std::size_t r = 0; r < topic.words.size(); ++r) {
      tw += std::to_string(topic.topic_id) + '\t' + std::to_string(r + 1) + '\t' +
            topic.words[r].word + '\t' + format_double(topic.words[r].probability) + '\n';
    }
  }
  atomic_write(dir / "top_words.tsv", tw);

  nlohmann::ordered_json meta;
  meta["stage"] = provenance.stage;
  meta["seed"] = provenance.seed;
  meta["config_hash"] = provenance.config_hash;
  meta["label"] = info.label;
  meta["topics"] = model.topics;
  meta["vocabulary_size"] = model.vocabulary_size();
  meta["documents"] = model.doc_topic.rows();
  meta["alpha"] = model.alpha;
  meta["beta"] = model.beta;
  meta["model_seed"] = model.seed;
  meta["sweeps"] = model.sweeps;
  meta["corpus_fingerprint"] = to_hex(model.corpus_fingerprint);
  meta["vocabulary_fingerprint"] = to_hex(model.vocabulary.fingerprint());
  meta["train_log2_likelihood_per_word"] = info.train_log_likelihood;
  atomic_write(dir / "model.json", meta.dump(2) + "\n");
}

TopicModel read_model_archive(const fs::path& dir, ModelInfo* info) {
  TopicModel m;
  decode_model_binary(read_file(dir / "model.bin"), m);
  m.vocabulary = parse_vocab_tsv(read_file(dir / "vocab.tsv"));
  if (m.vocabulary.size() != m.vocabulary_size()) {
    throw ParseError("model vocabulary does not match model.bin", 0);
  }
  if (info) {
    const auto meta = nlohmann::json::parse(read_file(dir / "model.json"));
    info->label = meta.at("label").get<std::string>();
    info->train_log_likelihood = meta.at("train_log2_likelihood_per_word").get<double>();
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string topic_scores_tsv(const std::vector<TopicScore>& scores, const Provenance& provenance) {
  std::string out = provenance.comment_line() +
                    "topic_id\tcoh\tpal_sum\tspecificity\tbaseline_coh\tgm\tmean_ridf\ttop_words\n";
  for (const auto& s : scores) {
    out += std::to_string(s.topic_id) + '\t' + format_double(s.coh) + '\t' +
           format_double(s.pal_sum) + '\t' + format_double(s.specificity) + '\t' +
           format_double(s.baseline_coh) + '\t' + format_double(s.gm) + '\t' +
           format_double(s.mean_ridf) + '\t';
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      if (i) out += ' ';
      out += s.words[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<TopicScore> parse_topic_scores_tsv(std::string_view text) {
  std::vector<TopicScore> out;
  std::size_t row = 0;
  for (auto line : data_lines(text)) {
    ++row;
    const auto f = split_tabs(line);
    if (f.size() != 8) throw ParseError("topic_scores.tsv: expected 8 columns", row);
    TopicScore s;
    s.topic_id = parse_field<std::size_t>(f[0], row, "topic id");
    s.coh = parse_field<double>(f[1], row, "coh");
    s.pal_sum = parse_field<double>(f[2], row, "pal_sum");
    s.specificity = parse_field<double>(f[3], row, "specificity");
    s.baseline_coh = parse_field<double>(f[4], row, "baseline_coh");
    s.gm = parse_field<double>(f[5], row, "gm");
    s.mean_ridf = parse_field<double>(f[6], row, "mean_ridf");
    std::size_t start = 0;
    while (start < f[7].size()) {
      auto sp = f[7].find(' ', start);
      if (sp == std::string_view::npos) sp = f[7].size();
      if (sp > start) s.words.emplace_back(f[7].substr(start, sp - start));
      start = sp + 1;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string word_scores_tsv(std::span<const WordScores> scores, const Provenance& provenance) {
  std::string out = provenance.comment_line() + "word\tdf\tcf\tridf\tpal\n";
  for (const auto& s : scores) {
    out += s.word + '\t' + std::to_string(s.df) + '\t' + std::to_string(s.cf) + '\t' +
           format_double(s.ridf) + '\t' + format_double(s.pal) + '\n';
  }
  return out;
}

}  // namespace topicfilter

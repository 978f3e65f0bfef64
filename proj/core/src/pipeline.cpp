#include "topicfilter/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "topicfilter/error.hpp"
#include "topicfilter/evaluation.hpp"
#include "topicfilter/hash.hpp"
#include "topicfilter/parallel.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter::pipeline {
namespace {

using Json = nlohmann::ordered_json;

Provenance provenance(const std::string& stage, const GlobalOptions& global, const Json& config) {
  return {stage, global.seed, config_hash(stage, config.dump(), global.seed)};
}

void stamp(Json& j, const Provenance& p) {
  j["stage"] = p.stage;
  j["seed"] = p.seed;
  j["config_hash"] = p.config_hash;
}

void write_json(const fs::path& path, const Json& j) { atomic_write(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void require(bool ok, const std::string& key, const std::string& detail) {
  if (!ok) throw ValidationError({key}, detail);
}

Corpus load_corpus(const Layout& layout) { return read_corpus_archive(layout.corpus()); }

RuleDirection parse_direction(const std::string& s) {
  if (s == "left-to-right") return RuleDirection::LeftPrecedesRight;
  if (s == "right-to-left") return RuleDirection::RightPrecedesLeft;
  throw ValidationError({"score.direction"}, "expected left-to-right or right-to-left");
}

std::vector<SelectionStrategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<SelectionStrategy> out;
  for (const auto& n : names) {
    const auto s = SelectionStrategy::parse(n);
    if (!s) throw ValidationError({"select.strategies"}, "unknown strategy '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::vector<std::size_t> split_ids(std::string_view s) {
  std::vector<std::size_t> out;
  std::istringstream in{std::string(s)};
  std::size_t v;
  while (in >> v) out.push_back(v);
  return out;
}

std::vector<SelectionPlan> read_selections(const fs::path& path) {
  const auto text = read_file(path);
  std::vector<SelectionPlan> plans;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split_tabs(line);
    if (f.size() != 4) throw ParseError(path.string() + ": expected 4 columns", row);
    const auto strategy = SelectionStrategy::parse(f[0]);
    if (!strategy) throw ParseError(path.string() + ": unknown strategy", row);
    SelectionPlan p;
    p.strategy = *strategy;
    p.k_star = std::stoul(std::string(f[1]));
    p.draw = std::stoul(std::string(f[2]));
    p.topics = split_ids(f[3]);
    plans.push_back(std::move(p));
  }
  return plans;
}

Json f1_json(const F1Summary& s) {
  Json j;
  j["f1_mean"] = s.mean;
  j["f1_std"] = s.std;
  j["per_fold"] = s.per_fold;
  return j;
}

}  // namespace

std::string config_hash(const std::string& stage, const std::string& canonical_config,
                        std::uint64_t seed) {
  Fnv1a h;
  h.update(stage);
  h.update_byte(0);
  h.update(canonical_config);
  h.update_byte(0);
  h.update_u64(seed);
  return to_hex(h.digest());
}

std::vector<std::string> trained_models(const Layout& layout) {
  std::vector<std::pair<std::size_t, std::string>> found;
  if (fs::is_directory(layout.models())) {
    for (const auto& entry : fs::directory_iterator(layout.models())) {
      const auto meta_path = entry.path() / "model.json";
      if (!entry.is_directory() || !fs::exists(meta_path)) continue;
      const auto meta = read_json(meta_path);
      found.emplace_back(meta.at("topics").get<std::size_t>(), entry.path().filename().string());
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  for (auto& [k, label] : found) out.push_back(std::move(label));
  return out;
}

// ---------------------------------------------------------------------------

void run_ingest(const GlobalOptions& global, const IngestConfig& c) {
  require(!c.input.empty(), "ingest.input", "an input path is required");
  require(c.format == "jsonl" || c.format == "pretokenized", "ingest.format",
          "expected jsonl or pretokenized");
  require(c.per_label_cap >= 1, "ingest.per-label-cap", "must be at least 1");
  require(c.min_token_len >= 1, "ingest.min-token-len", "must be at least 1");

  IngestOptions opts;
  opts.format = c.format == "jsonl" ? InputFormat::JsonLines : InputFormat::Pretokenized;
  opts.fields = {c.text_field, c.label_field, c.id_field};
  opts.per_label_cap = c.per_label_cap;
  opts.length_rank = c.length_rank;
  opts.tokenizer.lowercase = c.lowercase;
  opts.tokenizer.min_token_len = c.min_token_len;
  if (c.stopwords == "default") {
    opts.tokenizer.stopwords = default_stopwords();
  } else if (c.stopwords != "none") {
    std::istringstream words(read_file(c.stopwords));
    std::string w;
    while (words >> w) opts.tokenizer.stopwords.insert(w);
  }

  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw MissingArtifact(c.input);
  auto result = ingest(in, opts);
  auto pruned = prune_vocabulary(result.corpus, c.min_df);
  if (pruned.corpus.empty()) {
    throw ValidationError({"ingest.min-df"}, "no document survives vocabulary pruning");
  }
  const auto stats = compute_stats(pruned.corpus);

  Json config;
  config["input"] = fs::path(c.input).filename().string();
  config["format"] = c.format;
  config["fields"] = {c.text_field, c.label_field, c.id_field};
  config["per_label_cap"] = c.per_label_cap;
  config["length_rank"] = c.length_rank;
  config["lowercase"] = c.lowercase;
  config["min_token_len"] = c.min_token_len;
  config["stopwords"] = c.stopwords;
  config["min_df"] = c.min_df;
  const auto prov = provenance("ingest", global, config);

  const Layout layout{global.out};
  write_corpus_archive(layout.corpus(), pruned.corpus, stats, prov);

  Json meta;
  stamp(meta, prov);
  meta["config"] = config;
  meta["records"] = result.records;
  meta["malformed"] = result.malformed;
  meta["empty"] = result.empty;
  meta["capped"] = result.capped;
  meta["pruned_words"] = pruned.removed_words;
  meta["pruned_documents"] = pruned.removed_documents;
  meta["documents"] = pruned.corpus.size();
  meta["vocabulary_size"] = pruned.corpus.vocabulary().size();
  meta["total_tokens"] = stats.total_tokens;
  meta["labels"] = pruned.corpus.label_set();
  meta["corpus_fingerprint"] = to_hex(pruned.corpus.fingerprint());
  write_json(layout.corpus() / "meta.json", meta);
  spdlog::info("ingest: {} documents, {} words, {} malformed records skipped",
               pruned.corpus.size(), pruned.corpus.vocabulary().size(), result.malformed);
}

void run_windows(const GlobalOptions& global, const WindowsConfig& c) {
  require(c.length >= 2, "windows.length", "must be at least 2");
  const Layout layout{global.out};
  const auto corpus = load_corpus(layout);
  Json config;
  config["length"] = c.length;
  config["corpus_fingerprint"] = to_hex(corpus.fingerprint());
  const auto windows = extract_windows(corpus, c.length);
  write_windows_archive(layout.windows(), windows, provenance("windows", global, config));
  spdlog::info("windows: {} windows, {} ordered pairs", windows.window_count(),
               windows.pair_count());
}

void run_lda_train(const GlobalOptions& global, const LdaConfig& c) {
  require(c.beta > 0.0, "lda.beta", "must be positive");
  require(c.alpha < 0.0 || c.alpha > 0.0, "lda.alpha", "must be positive");
  require(c.sweeps >= 1, "lda.sweeps", "must be at least 1");
  require(c.top_words >= 1, "lda.top-words", "must be at least 1");
  require(!c.topics.empty() || !c.multiples.empty(), "lda.topics",
          "give topic counts or label multiples");

  const Layout layout{global.out};
  const auto corpus = load_corpus(layout);

  std::vector<std::pair<std::string, std::size_t>> runs;
  if (!c.topics.empty()) {
    for (auto k : c.topics) runs.emplace_back("K" + std::to_string(k), k);
  } else {
    const std::size_t L = corpus.label_set().size();
    require(L >= 1, "lda.multiples", "label multiples need a labeled corpus");
    for (auto m : c.multiples) {
      require(m >= 1, "lda.multiples", "multiples must be at least 1");
      runs.emplace_back(m == 1 ? "L" : std::to_string(m) + "L", m * L);
    }
  }
  for (const auto& [label, k] : runs) {
    require(k >= 2, "lda.topics", "model " + label + " needs at least 2 topics");
  }
  const std::size_t sweeps = c.collection_sweeps ? sweeps_for_collection(corpus.size()) : c.sweeps;

  parallel_for(runs.size(), global.workers, [&](std::size_t i) {
    const auto& [label, k] = runs[i];
    LdaOptions opts;
    opts.topics = k;
    opts.alpha = c.alpha;
    opts.beta = c.beta;
    opts.sweeps = sweeps;
    opts.seed = global.seed;

    Json config;
    config["label"] = label;
    config["topics"] = k;
    config["alpha"] = opts.resolved_alpha();
    config["beta"] = c.beta;
    config["sweeps"] = sweeps;
    config["top_words"] = c.top_words;
    config["corpus_fingerprint"] = to_hex(corpus.fingerprint());
    const auto prov = provenance("lda-train", global, config);

    std::string trace = prov.comment_line() + "sweep\tlog2_likelihood_per_word\n";
    const auto model = train_lda(corpus, opts, [&](std::size_t s, const GibbsSampler& sampler) {
      if (s % 10 == 0 || s == sweeps) {
        trace += std::to_string(s) + '\t' + format_double(sampler.log_likelihood_per_word()) + '\n';
      }
    });
    const ModelInfo info{label, training_log_likelihood(model, corpus)};
    write_model_archive(layout.model(label), model, info, prov, c.top_words);
    atomic_write(layout.model(label) / "training_log.tsv", trace);
    spdlog::info("lda-train: {} (K={}) log2 likelihood per word {:.4f}", label, k,
                 info.train_log_likelihood);
  });
}

void run_embed_train(const GlobalOptions& global, const EmbedTrainConfig& c) {
  require(c.dimension >= 2, "embed-train.dimension", "must be at least 2");
  require(c.window >= 1, "embed-train.window", "must be at least 1");
  require(c.negatives >= 1, "embed-train.negatives", "must be at least 1");
  require(c.epochs >= 1, "embed-train.epochs", "must be at least 1");
  require(c.learning_rate > 0.0, "embed-train.learning-rate", "must be positive");

  const Layout layout{global.out};
  const auto corpus = load_corpus(layout);
  SkipGramOptions opts;
  opts.dimension = c.dimension;
  opts.window = c.window;
  opts.negatives = c.negatives;
  opts.epochs = c.epochs;
  opts.learning_rate = c.learning_rate;
  opts.seed = global.seed;

  Json config;
  config["source"] = "skipgram";
  config["dimension"] = c.dimension;
  config["window"] = c.window;
  config["negatives"] = c.negatives;
  config["epochs"] = c.epochs;
  config["learning_rate"] = c.learning_rate;
  config["corpus_fingerprint"] = to_hex(corpus.fingerprint());
  const auto prov = provenance("embed-train", global, config);

  const auto result = train_skipgram(corpus, opts);
  std::ostringstream vectors;
  write_embeddings(vectors, result.table);
  atomic_write(layout.embeddings() / "vectors.txt", vectors.str());

  std::string log = prov.comment_line() + "epoch\tprobe_loss\n";
  for (std::size_t e = 0; e < result.probe_loss.size(); ++e) {
    log += std::to_string(e + 1) + '\t' + format_double(result.probe_loss[e]) + '\n';
  }
  atomic_write(layout.embeddings() / "training_log.tsv", log);

  Json meta;
  stamp(meta, prov);
  meta["config"] = config;
  meta["words"] = result.table.size();
  meta["dimension"] = result.table.dimension();
  meta["normalized"] = true;
  write_json(layout.embeddings() / "meta.json", meta);
  spdlog::info("embed-train: {} vectors, final probe loss {:.4f}", result.table.size(),
               result.probe_loss.back());
}

void run_embed_load(const GlobalOptions& global, const EmbedLoadConfig& c) {
  require(!c.path.empty(), "embed-load.path", "a vector file path is required");
  if (!fs::exists(c.path)) throw MissingArtifact(c.path);
  const auto table = load_embeddings(c.path, NormPolicy::Unit);

  Json config;
  config["source"] = "file";
  config["path"] = fs::path(c.path).filename().string();
  const auto prov = provenance("embed-load", global, config);
  const Layout layout{global.out};
  std::ostringstream vectors;
  write_embeddings(vectors, table);
  atomic_write(layout.embeddings() / "vectors.txt", vectors.str());
  std::error_code ignored;
  fs::remove(layout.embeddings() / "training_log.tsv", ignored);

  Json meta;
  stamp(meta, prov);
  meta["config"] = config;
  meta["words"] = table.size();
  meta["dimension"] = table.dimension();
  meta["normalized"] = true;
  write_json(layout.embeddings() / "meta.json", meta);
  spdlog::info("embed-load: {} vectors of dimension {}", table.size(), table.dimension());
}

void run_score(const GlobalOptions& global, const ScoreConfig& c) {
  require(c.top_words >= 2, "score.top-words", "must be at least 2");
  const auto direction = parse_direction(c.direction);
  const Layout layout{global.out};

  const auto models = c.models.empty() ? trained_models(layout) : c.models;
  if (models.empty()) throw MissingArtifact((layout.models() / "<label>" / "model.bin").string());
  // Check every input exists before doing any work.
  for (const auto& label : models) {
    if (!fs::exists(layout.model(label) / "model.bin")) {
      throw MissingArtifact((layout.model(label) / "model.bin").string());
    }
  }
  const auto corpus = load_corpus(layout);
  const auto windows = read_windows_archive(layout.windows());
  const auto vectors_path = layout.embeddings() / "vectors.txt";
  if (!fs::exists(vectors_path)) throw MissingArtifact(vectors_path.string());
  const auto embeddings = load_embeddings(vectors_path.string(), NormPolicy::Unit);

  if (windows.vocabulary_size() != corpus.vocabulary().size()) {
    throw Error("window counts were built from a different corpus; rerun the windows stage");
  }
  const auto stats = compute_stats(corpus);
  const WordScoreTable table(corpus.vocabulary(), stats, windows, direction);

  for (const auto& label : models) {
    const auto model = read_model_archive(layout.model(label));
    if (model.vocabulary.fingerprint() != corpus.vocabulary().fingerprint()) {
      throw Error("model " + label + " was trained on a different vocabulary");
    }
    const auto topics = all_top_words(model, c.top_words);
    const auto scores = score_topics(topics, table, embeddings, global.workers);

    Json config;
    config["model"] = label;
    config["top_words"] = c.top_words;
    config["direction"] = c.direction;
    config["window_length"] = windows.window_length();
    config["corpus_fingerprint"] = to_hex(corpus.fingerprint());
    const auto prov = provenance("score", global, config);

    atomic_write(layout.scores(label) / "topic_scores.tsv", topic_scores_tsv(scores, prov));

    std::vector<WordScores> used;
    std::vector<bool> seen(corpus.vocabulary().size(), false);
    std::size_t covered = 0, total = 0;
    for (const auto& t : topics) {
      for (const auto& w : t.words) {
        ++total;
        if (embeddings.contains(w.word)) ++covered;
        if (!seen[w.id]) {
          seen[w.id] = true;
          used.push_back(table.at(w.word));
        }
      }
    }
    std::sort(used.begin(), used.end(),
              [](const WordScores& a, const WordScores& b) { return a.id < b.id; });
    atomic_write(layout.scores(label) / "word_scores.tsv", word_scores_tsv(used, prov));

    Json meta;
    stamp(meta, prov);
    meta["config"] = config;
    meta["topics"] = model.topics;
    meta["embedding_coverage"] = total ? static_cast<double>(covered) / static_cast<double>(total)
                                       : 0.0;
    write_json(layout.scores(label) / "meta.json", meta);
    if (covered < total) {
      spdlog::warn("score: {} of {} top words of {} have no embedding", total - covered, total,
                   label);
    }
    spdlog::info("score: {} topics of {} scored", scores.size(), label);
  }
}

void run_select(const GlobalOptions& global, const SelectConfig& c) {
  require(!c.strategies.empty(), "select.strategies", "at least one strategy is required");
  require(!c.k_star.empty(), "select.k-star", "at least one K* is required");
  require(c.random_draws >= 1, "select.random-draws", "must be at least 1");
  for (auto k : c.k_star) require(k >= 1, "select.k-star", "K* must be at least 1");
  const auto strategies = parse_strategies(c.strategies);

  const Layout layout{global.out};
  const auto models = trained_models(layout);
  if (models.empty()) throw MissingArtifact((layout.models() / "<label>" / "model.bin").string());
  for (const auto& label : models) {
    const auto path = layout.scores(label) / "topic_scores.tsv";
    const auto scores = parse_topic_scores_tsv(read_file(path));

    ExperimentOptions opts;
    opts.strategies = strategies;
    opts.random_draws = c.random_draws;
    opts.seed = global.seed;
    for (auto k : c.k_star) {
      if (k <= scores.size()) {
        opts.k_star.push_back(k);
      } else {
        spdlog::warn("select: K*={} exceeds the {} topics of {}; skipped", k, scores.size(), label);
      }
    }

    Json config;
    config["model"] = label;
    config["strategies"] = c.strategies;
    config["k_star"] = opts.k_star;
    config["random_draws"] = c.random_draws;
    const auto prov = provenance("select", global, config);

    std::string out = prov.comment_line() + "strategy\tk_star\tdraw\ttopics\n";
    for (const auto& p : plan_selections(scores, opts)) {
      out += p.strategy.name() + '\t' + std::to_string(p.k_star) + '\t' + std::to_string(p.draw) +
             '\t' + join_ids(p.topics) + '\n';
    }
    atomic_write(layout.selections(label) / "selections.tsv", out);
  }
}

void run_evaluate(const GlobalOptions& global, const EvaluateConfig& c) {
  require(c.folds >= 2, "evaluate.folds", "must be at least 2");
  require(c.trees >= 1, "evaluate.trees", "must be at least 1");
  require(c.train_fraction > 0.0 && c.train_fraction <= 1.0, "evaluate.train-fraction",
          "must lie in (0, 1]");

  const Layout layout{global.out};
  const auto ref_path = layout.model(c.reference) / "model.bin";
  if (!fs::exists(ref_path)) throw MissingArtifact(ref_path.string());
  const auto corpus = load_corpus(layout);
  const auto labels = corpus.label_indices();

  ExperimentOptions opts;
  opts.seed = global.seed;
  opts.renormalize = c.renormalize;
  opts.cv.folds = c.folds;
  opts.cv.seed = global.seed;
  opts.cv.train_fraction = c.train_fraction;
  opts.cv.forest.trees = c.trees;
  opts.cv.forest.seed = derive_seed(global.seed, 0x464f52ULL);
  opts.cv.forest.workers = global.workers;

  Json config;
  config["reference"] = c.reference;
  config["folds"] = c.folds;
  config["trees"] = c.trees;
  config["train_fraction"] = c.train_fraction;
  config["renormalize"] = c.renormalize;
  config["corpus_fingerprint"] = to_hex(corpus.fingerprint());
  const auto prov = provenance("evaluate", global, config);

  auto features_of = [&](const std::string& label, ModelInfo& info) {
    const auto model = read_model_archive(layout.model(label), &info);
    return std::pair{model.topics, doc_features(model, corpus)};
  };

  ModelInfo ref_info;
  const auto [ref_topics, ref_features] = features_of(c.reference, ref_info);
  const auto reference = cross_validate_f1(ref_features, labels, opts.cv);

  Json results;
  stamp(results, prov);
  results["config"] = config;
  results["labels"] = corpus.label_set();
  results["documents"] = corpus.size();
  Json ref;
  ref["model"] = c.reference;
  ref["topics"] = ref_topics;
  ref.update(f1_json(reference));
  results["reference"] = ref;

  Json models = Json::array();
  for (const auto& label : trained_models(layout)) {
    ModelInfo info;
    const auto [topics, features] = features_of(label, info);
    const auto full = label == c.reference ? reference : cross_validate_f1(features, labels, opts.cv);
    Json m;
    m["model"] = label;
    m["topics"] = topics;
    m["train_log2_likelihood_per_word"] = info.train_log_likelihood;
    m.update(f1_json(full));
    m["information_loss"] = information_loss(full.mean, reference.mean);

    Json reports = Json::array();
    const auto sel_path = layout.selections(label) / "selections.tsv";
    if (fs::exists(sel_path)) {
      const auto plans = read_selections(sel_path);
      for (const auto& r : evaluate_plans(label, features, labels, plans, reference, opts)) {
        Json jr;
        jr["k_star"] = r.k_star;
        jr["data_compression"] = r.data_compression;
        Json rows = Json::array();
        for (const auto& s : r.results) {
          Json js;
          js["strategy"] = s.strategy;
          js["f1_mean"] = s.f1_mean;
          js["f1_std"] = s.f1_std;
          js["information_loss"] = s.information_loss;
          js["draws"] = s.draws;
          rows.push_back(js);
        }
        jr["results"] = rows;
        reports.push_back(jr);
      }
    }
    m["selections"] = reports;
    models.push_back(m);
    spdlog::info("evaluate: {} macro-F1 {:.3f} +/- {:.3f}", label, full.mean, full.std);
  }
  results["models"] = models;
  write_json(layout.evaluation() / "results.json", results);
}

void run_report(const GlobalOptions& global) {
  const Layout layout{global.out};
  const auto results = read_json(layout.evaluation() / "results.json");
  Json config;
  config["evaluation_config_hash"] = results.at("config_hash");
  const auto prov = provenance("report", global, config);

  const auto& ref = results.at("reference");
  const double ref_f1 = ref.at("f1_mean").get<double>();
  const std::string ref_label = ref.at("model").get<std::string>();

  std::string table2 = prov.comment_line() + "Model\tK\tPr\tF1_mean\tF1_std\n";
  std::string rows = prov.comment_line() +
                     "Model\tK\tK_star\tStrategy\tDC\tF1_mean\tF1_std\tIL\tReference\tReference_F1\n";
  std::vector<std::string> strategy_order;
  for (const auto& m : results.at("models")) {
    for (const auto& r : m.at("selections")) {
      for (const auto& s : r.at("results")) {
        const auto name = s.at("strategy").get<std::string>();
        if (std::find(strategy_order.begin(), strategy_order.end(), name) == strategy_order.end()) {
          strategy_order.push_back(name);
        }
      }
    }
  }
  std::string table3 = prov.comment_line() + "Model\tK\tK_star\tDC";
  for (const auto& s : strategy_order) table3 += "\tIL-" + s;
  table3 += '\n';

  Json report;
  stamp(report, prov);
  report["reference"] = {{"model", ref_label}, {"f1_mean", ref_f1}};
  Json t2 = Json::array(), t3 = Json::array(), all = Json::array();
  for (const auto& m : results.at("models")) {
    const auto label = m.at("model").get<std::string>();
    const auto K = m.at("topics").get<std::size_t>();
    const double pr = m.at("train_log2_likelihood_per_word").get<double>();
    const double f1 = m.at("f1_mean").get<double>();
    const double sd = m.at("f1_std").get<double>();
    table2 += label + '\t' + std::to_string(K) + '\t' + format_double(pr) + '\t' +
              format_double(f1) + '\t' + format_double(sd) + '\n';
    t2.push_back({{"model", label}, {"topics", K}, {"pr", pr}, {"f1_mean", f1}, {"f1_std", sd}});

    for (const auto& r : m.at("selections")) {
      const auto k_star = r.at("k_star").get<std::size_t>();
      const double dc = r.at("data_compression").get<double>();
      std::map<std::string, double> il;
      for (const auto& s : r.at("results")) {
        const auto name = s.at("strategy").get<std::string>();
        const double v = s.at("information_loss").get<double>();
        il[name] = v;
        rows += label + '\t' + std::to_string(K) + '\t' + std::to_string(k_star) + '\t' + name +
                '\t' + format_double(dc) + '\t' + format_double(s.at("f1_mean").get<double>()) +
                '\t' + format_double(s.at("f1_std").get<double>()) + '\t' + format_double(v) +
                '\t' + ref_label + '\t' + format_double(ref_f1) + '\n';
        all.push_back({{"model", label},
                       {"topics", K},
                       {"k_star", k_star},
                       {"strategy", name},
                       {"data_compression", dc},
                       {"f1_mean", s.at("f1_mean")},
                       {"f1_std", s.at("f1_std")},
                       {"information_loss", v}});
      }
      table3 += label + '\t' + std::to_string(K) + '\t' + std::to_string(k_star) + '\t' +
                format_double(dc);
      Json j3 = {{"model", label}, {"topics", K}, {"k_star", k_star}, {"data_compression", dc}};
      Json ils;
      for (const auto& s : strategy_order) {
        const auto it = il.find(s);
        table3 += '\t' + (it == il.end() ? std::string("NA") : format_double(it->second));
        if (it != il.end()) ils[s] = it->second;
      }
      table3 += '\n';
      j3["information_loss"] = ils;
      t3.push_back(j3);
    }
  }
  report["table2"] = t2;
  report["table3"] = t3;
  report["rows"] = all;

  atomic_write(layout.report() / "report.tsv", rows);
  atomic_write(layout.report() / "table2.tsv", table2);
  atomic_write(layout.report() / "table3.tsv", table3);
  write_json(layout.report() / "report.json", report);
}

void run_toy_corpus(const GlobalOptions& global, const ToyConfig& c) {
  require(!c.output.empty(), "toy-corpus.output", "an output path is required");
  auto opts = c.corpus;
  opts.seed = global.seed;
  atomic_write(c.output, to_json_lines(generate_toy_corpus(opts)));
}

}  // namespace topicfilter::pipeline

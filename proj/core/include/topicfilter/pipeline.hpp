#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "topicfilter/archive.hpp"
#include "topicfilter/synthetic.hpp"

namespace topicfilter::pipeline {

namespace fs = std::filesystem;

struct GlobalOptions {
  fs::path out = "topicfilter-out";
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Artifact locations under the output directory.
struct Layout {
  fs::path root;

  fs::path corpus() const { return root / "corpus"; }
  fs::path windows() const { return root / "windows"; }
  fs::path embeddings() const { return root / "embeddings"; }
  fs::path models() const { return root / "models"; }
  fs::path model(const std::string& label) const { return models() / label; }
  fs::path scores(const std::string& label) const { return root / "scores" / label; }
  fs::path selections(const std::string& label) const { return root / "selections" / label; }
  fs::path evaluation() const { return root / "evaluation"; }
  fs::path report() const { return root / "report"; }
};

struct IngestConfig {
  std::string input;
  /// "jsonl" or "pretokenized".
  std::string format = "jsonl";
  std::string text_field = "text";
  std::string label_field = "label";
  std::string id_field = "id";
  std::size_t per_label_cap = 1000;
  bool length_rank = true;
  bool lowercase = true;
  std::size_t min_token_len = 2;
  /// "default", "none", or a path to a file with one stopword per line.
  std::string stopwords = "default";
  std::size_t min_df = 5;
};

struct WindowsConfig {
  std::size_t length = 5;
};

struct LdaConfig {
  /// Explicit topic counts; labelled "K<k>".
  std::vector<std::size_t> topics;
  /// Multiples of the corpus label count; labelled "L", "2L", ...
  std::vector<std::size_t> multiples = {1, 2, 5, 10, 15};
  double alpha = -1.0;
  double beta = 0.01;
  std::size_t sweeps = 1000;
  /// Use round(0.2 * documents) sweeps instead of `sweeps`.
  bool collection_sweeps = false;
  std::size_t top_words = 25;
};

struct EmbedTrainConfig {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 15;
  double learning_rate = 0.025;
};

struct EmbedLoadConfig {
  std::string path;
};

struct ScoreConfig {
  std::size_t top_words = 25;
  /// "left-to-right" or "right-to-left".
  std::string direction = "left-to-right";
  /// Model labels to score; empty means every trained model.
  std::vector<std::string> models;
};

struct SelectConfig {
  std::vector<std::string> strategies = {"random", "baseline_coh", "ridf", "pal",
                                         "coh",    "gm",           "specificity"};
  std::vector<std::size_t> k_star = {40, 10};
  std::size_t random_draws = 10;
};

struct EvaluateConfig {
  std::string reference = "2L";
  std::size_t folds = 5;
  std::size_t trees = 100;
  double train_fraction = 0.5;
  bool renormalize = false;
};

struct ToyConfig {
  std::string output;
  ToyCorpusOptions corpus;
};

/// Canonical hash of a stage configuration plus the global seed.
std::string config_hash(const std::string& stage, const std::string& canonical_config,
                        std::uint64_t seed);

void run_ingest(const GlobalOptions& global, const IngestConfig& config);
void run_windows(const GlobalOptions& global, const WindowsConfig& config);
void run_lda_train(const GlobalOptions& global, const LdaConfig& config);
void run_embed_train(const GlobalOptions& global, const EmbedTrainConfig& config);
void run_embed_load(const GlobalOptions& global, const EmbedLoadConfig& config);
void run_score(const GlobalOptions& global, const ScoreConfig& config);
void run_select(const GlobalOptions& global, const SelectConfig& config);
void run_evaluate(const GlobalOptions& global, const EvaluateConfig& config);
void run_report(const GlobalOptions& global);
void run_toy_corpus(const GlobalOptions& global, const ToyConfig& config);

/// Labels of trained models ordered by topic count, then label.
std::vector<std::string> trained_models(const Layout& layout);

}  // namespace topicfilter::pipeline

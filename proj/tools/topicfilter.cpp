// topicfilter: stage-by-stage driver for topic scoring and selection
// experiments. Every stage reads its inputs from and writes its outputs to
// the --out directory.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "topicfilter/error.hpp"
#include "topicfilter/pipeline.hpp"

namespace tp = topicfilter::pipeline;

namespace {

struct Options {
  tp::GlobalOptions global;
  std::string log_level = "info";
  tp::IngestConfig ingest;
  tp::WindowsConfig windows;
  tp::LdaConfig lda;
  tp::EmbedTrainConfig embed_train;
  tp::EmbedLoadConfig embed_load;
  tp::ScoreConfig score;
  tp::SelectConfig select;
  tp::EvaluateConfig evaluate;
  tp::ToyConfig toy;
};

void add_ingest(CLI::App* app, tp::IngestConfig& c, bool required_input) {
  auto* input = app->add_option("--input,-i", c.input, "Record file to ingest");
  if (required_input) input->required();
  app->add_option("--format", c.format, "jsonl or pretokenized")
      ->check(CLI::IsMember({"jsonl", "pretokenized"}))
      ->capture_default_str();
  app->add_option("--text-field", c.text_field)->capture_default_str();
  app->add_option("--label-field", c.label_field)->capture_default_str();
  app->add_option("--id-field", c.id_field)->capture_default_str();
  app->add_option("--per-label-cap", c.per_label_cap, "Documents kept per label")
      ->capture_default_str();
  app->add_flag("--length-rank,!--stream-order", c.length_rank,
                "Keep the longest documents per label (default) or the first ones");
  app->add_flag("--lowercase,!--keep-case", c.lowercase);
  app->add_option("--min-token-len", c.min_token_len)->capture_default_str();
  app->add_option("--stopwords", c.stopwords, "default, none, or a word list file")
      ->capture_default_str();
  app->add_option("--min-df", c.min_df, "Drop words in fewer documents")->capture_default_str();
}

void add_windows(CLI::App* app, tp::WindowsConfig& c, const std::string& name) {
  app->add_option(name, c.length, "Context window length in tokens")->capture_default_str();
}

void add_lda(CLI::App* app, tp::LdaConfig& c) {
  app->add_option("--topics", c.topics, "Explicit topic counts, labelled K<k>")->delimiter(',');
  app->add_option("--multiples", c.multiples, "Topic counts as multiples of the label count")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--alpha", c.alpha, "Document prior; negative selects 50/K")
      ->capture_default_str();
  app->add_option("--beta", c.beta)->capture_default_str();
  app->add_option("--sweeps", c.sweeps)->capture_default_str();
  app->add_flag("--collection-sweeps", c.collection_sweeps,
                "Use round(0.2 * documents) sweeps instead of --sweeps");
}

void add_embed_train(CLI::App* app, tp::EmbedTrainConfig& c) {
  app->add_option("--dimension", c.dimension)->capture_default_str();
  app->add_option("--window", c.window, "Maximum skip-gram reach")->capture_default_str();
  app->add_option("--negatives", c.negatives)->capture_default_str();
  app->add_option("--epochs", c.epochs)->capture_default_str();
  app->add_option("--learning-rate", c.learning_rate)->capture_default_str();
}

void add_score(CLI::App* app, tp::ScoreConfig& c) {
  app->add_option("--direction", c.direction, "Ordered support used for PAL")
      ->check(CLI::IsMember({"left-to-right", "right-to-left"}))
      ->capture_default_str();
  app->add_option("--models", c.models, "Model labels to score (default: all)")->delimiter(',');
}

void add_select(CLI::App* app, tp::SelectConfig& c) {
  app->add_option("--strategies", c.strategies)->delimiter(',')->capture_default_str();
  app->add_option("--k-star", c.k_star, "Retained topic counts")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--random-draws", c.random_draws)->capture_default_str();
}

void add_evaluate(CLI::App* app, tp::EvaluateConfig& c) {
  app->add_option("--reference", c.reference, "Model label providing the reference F1")
      ->capture_default_str();
  app->add_option("--folds", c.folds)->capture_default_str();
  app->add_option("--trees", c.trees)->capture_default_str();
  app->add_option("--train-fraction", c.train_fraction,
                  "Share of each fold complement used for training")
      ->capture_default_str();
  app->add_flag("--renormalize", c.renormalize,
                "Rescale restricted topic features to sum to one");
}

void run_all(const Options& o, const std::string& embeddings_path) {
  tp::run_ingest(o.global, o.ingest);
  tp::run_windows(o.global, o.windows);
  tp::run_lda_train(o.global, o.lda);
  if (embeddings_path.empty()) {
    tp::run_embed_train(o.global, o.embed_train);
  } else {
    tp::run_embed_load(o.global, {embeddings_path});
  }
  tp::run_score(o.global, o.score);
  tp::run_select(o.global, o.select);
  tp::run_evaluate(o.global, o.evaluate);
  tp::run_report(o.global);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Topic scoring, selection and information-loss evaluation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file; command line flags take precedence");
  app.add_option("--out,-o", o.global.out, "Artifact directory")->capture_default_str();
  app.add_option("--seed", o.global.seed, "Master seed")->capture_default_str();
  app.add_option("--workers", o.global.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", o.log_level)
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "err", "off"}))
      ->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Tokenize records into a corpus archive");
  add_ingest(ingest, o.ingest, true);

  auto* windows = app.add_subcommand("windows", "Count context-window supports");
  add_windows(windows, o.windows, "--length");

  auto* lda = app.add_subcommand("lda-train", "Train LDA models by collapsed Gibbs sampling");
  add_lda(lda, o.lda);
  lda->add_option("--top-words", o.lda.top_words, "Words exported per topic")
      ->capture_default_str();

  auto* embed_train = app.add_subcommand("embed-train", "Train skip-gram vectors on the corpus");
  add_embed_train(embed_train, o.embed_train);

  auto* embed_load = app.add_subcommand("embed-load", "Import vectors from a text file");
  embed_load->add_option("--path", o.embed_load.path, "count/dim header, then word v1 .. vd")
      ->required();

  auto* score = app.add_subcommand("score", "Score topics of every trained model");
  add_score(score, o.score);
  score->add_option("--top-words", o.score.top_words)->capture_default_str();

  auto* select = app.add_subcommand("select", "Choose topic subsets per strategy and K*");
  add_select(select, o.select);

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validate selections against a reference");
  add_evaluate(evaluate, o.evaluate);

  auto* report = app.add_subcommand("report", "Write model and selection tables");

  auto* toy = app.add_subcommand("toy-corpus", "Write the planted-category demo corpus");
  toy->add_option("--output", o.toy.output, "JSON lines destination")->required();
  toy->add_option("--categories", o.toy.corpus.categories)->capture_default_str();
  toy->add_option("--docs-per-category", o.toy.corpus.docs_per_category)->capture_default_str();

  std::string run_embeddings;
  std::size_t run_top_words = 25;
  auto* run = app.add_subcommand("run", "Run every stage from ingest to report");
  add_ingest(run, o.ingest, true);
  add_windows(run, o.windows, "--window-length");
  add_lda(run, o.lda);
  add_embed_train(run, o.embed_train);
  run->add_option("--embeddings", run_embeddings, "Load vectors instead of training them");
  run->add_option("--top-words", run_top_words, "Words per topic")->capture_default_str();
  add_score(run, o.score);
  add_select(run, o.select);
  add_evaluate(run, o.evaluate);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? EXIT_SUCCESS : 1;
  }
  spdlog::set_level(spdlog::level::from_str(o.log_level));

  try {
    if (*ingest) tp::run_ingest(o.global, o.ingest);
    if (*windows) tp::run_windows(o.global, o.windows);
    if (*lda) tp::run_lda_train(o.global, o.lda);
    if (*embed_train) tp::run_embed_train(o.global, o.embed_train);
    if (*embed_load) tp::run_embed_load(o.global, o.embed_load);
    if (*score) tp::run_score(o.global, o.score);
    if (*select) tp::run_select(o.global, o.select);
    if (*evaluate) tp::run_evaluate(o.global, o.evaluate);
    if (*report) tp::run_report(o.global);
    if (*toy) tp::run_toy_corpus(o.global, o.toy);
    if (*run) {
      o.lda.top_words = run_top_words;
      o.score.top_words = run_top_words;
      run_all(o, run_embeddings);
    }
  } catch (const topicfilter::MissingArtifact& e) {
    std::cerr << "error: missing artifact " << e.path() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return EXIT_SUCCESS;
}

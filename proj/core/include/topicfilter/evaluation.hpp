#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topicfilter/forest.hpp"
#include "topicfilter/matrix.hpp"
#include "topicfilter/scoring.hpp"

namespace topicfilter {

// ---------------------------------------------------------------------------
// Selection

/// Either a uniform random draw or the top-scoring topics under one metric.
struct SelectionStrategy {
  enum class Kind { Random, ByScore };

  Kind kind = Kind::ByScore;
  Metric metric = Metric::Specificity;

  static SelectionStrategy random() { return {Kind::Random, Metric::Specificity}; }
  static SelectionStrategy by_score(Metric m) { return {Kind::ByScore, m}; }

  /// "random" or the metric name.
  std::string name() const;
  static std::optional<SelectionStrategy> parse(std::string_view name);

  bool operator==(const SelectionStrategy&) const = default;
};

/// The k_star topics with the highest metric value, ties by ascending topic
/// id. Returned ids are sorted ascending. Throws InvalidArgument unless
/// 1 <= k_star <= scores.size().
std::vector<std::size_t> select_by_score(std::span<const TopicScore> scores, Metric metric,
                                         std::size_t k_star);

/// k_star distinct ids drawn uniformly from [0, topics), sorted ascending.
std::vector<std::size_t> select_random(std::size_t topics, std::size_t k_star,
                                       std::uint64_t seed);

/// Dispatches on the strategy kind; `seed` only affects random selection.
std::vector<std::size_t> select(std::span<const TopicScore> scores,
                                const SelectionStrategy& strategy, std::size_t k_star,
                                std::uint64_t seed = 0);

/// Columns `columns` of `features`, row order unchanged. With `renormalize`
/// every row is rescaled to sum to 1 (rows summing to 0 are left as is).
Matrix restrict_columns(const Matrix& features, std::span<const std::size_t> columns,
                        bool renormalize = false);

// ---------------------------------------------------------------------------
// Classification quality

/// Unweighted mean of per-class F1 over classes [0, classes). A class with
/// no true and no predicted members scores 0.
double macro_f1(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                std::size_t classes);

struct CrossValidationOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  /// Share of each fold's complement used to train the forest (stratified,
  /// at least one document per class).
  double train_fraction = 0.5;
  ForestOptions forest;
};

struct F1Summary {
  double mean = 0.0;
  /// Sample standard deviation across folds.
  double std = 0.0;
  std::vector<double> per_fold;
};

/// Stratified k-fold assignment: fold index per row. Throws InvalidArgument
/// when some class has fewer members than folds.
std::vector<std::size_t> stratified_folds(std::span<const std::size_t> labels,
                                          std::size_t folds, std::uint64_t seed);

/// Stratified k-fold macro-F1 of a random forest.
F1Summary cross_validate_f1(const Matrix& features, std::span<const std::size_t> labels,
                            const CrossValidationOptions& options = {});

/// 1 - f1 / f1_ref. Throws InvalidArgument when f1_ref is not positive.
double information_loss(double f1, double f1_ref);

/// K / K*. Throws InvalidArgument when k_star is 0.
double data_compression(std::size_t topics, std::size_t k_star);

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentOptions {
  std::vector<SelectionStrategy> strategies;
  std::vector<std::size_t> k_star;
  /// Random selections evaluated per K*; the reported IL is their mean.
  std::size_t random_draws = 10;
  std::uint64_t seed = 1;
  bool renormalize = false;
  CrossValidationOptions cv;
};

/// One concrete topic subset to evaluate.
struct SelectionPlan {
  SelectionStrategy strategy;
  std::size_t k_star = 0;
  /// Draw index for random selections, 0 otherwise.
  std::size_t draw = 0;
  std::vector<std::size_t> topics;
};

/// Every selection implied by the options, in (K*, strategy, draw) order.
/// Deterministic for a fixed seed.
std::vector<SelectionPlan> plan_selections(std::span<const TopicScore> scores,
                                           const ExperimentOptions& options);

struct StrategyResult {
  std::string strategy;
  double f1_mean = 0.0;
  /// Fold std for scored strategies; std across draw means for random.
  double f1_std = 0.0;
  double information_loss = 0.0;
  std::size_t draws = 1;
};

struct EvalReport {
  std::string model;
  std::size_t topics = 0;
  std::size_t k_star = 0;
  double data_compression = 0.0;
  std::vector<StrategyResult> results;
};

/// Cross-validates every planned selection against a reference F1. Reports
/// are grouped by K* in ascending plan order.
std::vector<EvalReport> evaluate_plans(const std::string& model_label, const Matrix& features,
                                       std::span<const std::size_t> labels,
                                       std::span<const SelectionPlan> plans,
                                       const F1Summary& reference,
                                       const ExperimentOptions& options);

/// plan_selections followed by evaluate_plans.
std::vector<EvalReport> run_experiment(const std::string& model_label, const Matrix& features,
                                       std::span<const std::size_t> labels,
                                       std::span<const TopicScore> scores,
                                       const F1Summary& reference,
                                       const ExperimentOptions& options);

}  // namespace topicfilter

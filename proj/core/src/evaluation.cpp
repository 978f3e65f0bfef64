#include "topicfilter/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "topicfilter/error.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter {
namespace {

template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double mean_of(std::span<const double> xs) {
  return xs.empty() ? 0.0
                    : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Selection

std::string SelectionStrategy::name() const {
  return kind == Kind::Random ? std::string("random") : std::string(metric_name(metric));
}

std::optional<SelectionStrategy> SelectionStrategy::parse(std::string_view name) {
  if (name == "random") return random();
  if (auto m = parse_metric(name)) return by_score(*m);
  return std::nullopt;
}

std::vector<std::size_t> select_by_score(std::span<const TopicScore> scores, Metric metric,
                                         std::size_t k_star) {
  if (k_star < 1 || k_star > scores.size()) {
    throw InvalidArgument("K* must lie in [1, K]; got " + std::to_string(k_star) + " for K=" +
                          std::to_string(scores.size()));
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = metric_value(scores[a], metric);
    const double vb = metric_value(scores[b], metric);
    if (va != vb) return va > vb;
    return scores[a].topic_id < scores[b].topic_id;
  });
  std::vector<std::size_t> out;
  out.reserve(k_star);
  for (std::size_t i = 0; i < k_star; ++i) out.push_back(scores[order[i]].topic_id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> select_random(std::size_t topics, std::size_t k_star,
                                       std::uint64_t seed) {
  if (k_star < 1 || k_star > topics) {
    throw InvalidArgument("K* must lie in [1, K]; got " + std::to_string(k_star) + " for K=" +
                          std::to_string(topics));
  }
  std::vector<std::size_t> ids(topics);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  auto rng = make_rng(seed);
  shuffle_in_place(ids, rng);
  ids.resize(k_star);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::size_t> select(std::span<const TopicScore> scores,
                                const SelectionStrategy& strategy, std::size_t k_star,
                                std::uint64_t seed) {
  if (strategy.kind == SelectionStrategy::Kind::Random) {
    return select_random(scores.size(), k_star, seed);
  }
  return select_by_score(scores, strategy.metric, k_star);
}

Matrix restrict_columns(const Matrix& features, std::span<const std::size_t> columns,
                        bool renormalize) {
  Matrix out(features.rows(), columns.size());
  for (std::size_t r = 0; r < features.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c] >= features.cols()) throw InvalidArgument("column index out of range");
      out(r, c) = features(r, columns[c]);
      sum += out(r, c);
    }
    if (renormalize && sum > 0.0) {
      for (double& x : out.row(r)) x /= sum;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification quality

double macro_f1(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                std::size_t classes) {
  if (truth.size() != predicted.size()) throw InvalidArgument("prediction count mismatch");
  if (classes == 0) throw InvalidArgument("macro-F1 needs at least one class");
  std::vector<double> tp(classes, 0.0), fp(classes, 0.0), fn(classes, 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) {
      tp[truth[i]] += 1.0;
    } else {
      fn[truth[i]] += 1.0;
      fp[predicted[i]] += 1.0;
    }
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    const double denom = 2.0 * tp[c] + fp[c] + fn[c];
    sum += denom > 0.0 ? 2.0 * tp[c] / denom : 0.0;
  }
  return sum / static_cast<double>(classes);
}

std::vector<std::size_t> stratified_folds(std::span<const std::size_t> labels,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  if (labels.empty()) throw InvalidArgument("cross-validation needs labelled rows");
  const std::size_t classes = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  std::vector<std::size_t> fold(labels.size(), 0);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    auto& m = members[c];
    if (m.empty()) continue;
    if (m.size() < folds) {
      throw InvalidArgument("class " + std::to_string(c) + " has " + std::to_string(m.size()) +
                            " members, fewer than " + std::to_string(folds) + " folds");
    }
    auto rng = make_rng(seed, c);
    shuffle_in_place(m, rng);
    for (std::size_t i = 0; i < m.size(); ++i) fold[m[i]] = (offset + i) % folds;
    offset = (offset + m.size()) % folds;
  }
  return fold;
}

F1Summary cross_validate_f1(const Matrix& features, std::span<const std::size_t> labels,
                            const CrossValidationOptions& options) {
  if (features.rows() != labels.size()) {
    throw InvalidArgument("label count does not match feature rows");
  }
  if (!(options.train_fraction > 0.0) || options.train_fraction > 1.0) {
    throw InvalidArgument("train_fraction must lie in (0, 1]");
  }
  const auto fold = stratified_folds(labels, options.folds, options.seed);
  const std::size_t classes = *std::max_element(labels.begin(), labels.end()) + 1;

  F1Summary summary;
  for (std::size_t f = 0; f < options.folds; ++f) {
    std::vector<std::vector<std::size_t>> pool(classes);
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (fold[i] == f ? test : pool[labels[i]]).push_back(i);
    }

    std::vector<std::size_t> train;
    auto rng = make_rng(options.seed, 0x7472000000ULL + f);
    for (auto& members : pool) {
      if (members.empty()) continue;
      shuffle_in_place(members, rng);
      const auto take = std::clamp<std::size_t>(
          static_cast<std::size_t>(
              std::llround(options.train_fraction * static_cast<double>(members.size()))),
          1, members.size());
      train.insert(train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(train.begin(), train.end());

    Matrix x_train(train.size(), features.cols());
    std::vector<std::size_t> y_train(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      std::copy_n(features.row(train[i]).begin(), features.cols(), x_train.row(i).begin());
      y_train[i] = labels[train[i]];
    }
    ForestOptions forest = options.forest;
    forest.seed = derive_seed(options.forest.seed, f);
    const auto model = train_forest(x_train, y_train, forest);

    std::vector<std::size_t> truth, predicted;
    truth.reserve(test.size());
    predicted.reserve(test.size());
    for (auto i : test) {
      truth.push_back(labels[i]);
      predicted.push_back(model.predict(features.row(i)));
    }
    summary.per_fold.push_back(macro_f1(truth, predicted, classes));
  }
  summary.mean = mean_of(summary.per_fold);
  summary.std = sample_std(summary.per_fold);
  return summary;
}

double information_loss(double f1, double f1_ref) {
  if (!(f1_ref > 0.0)) throw InvalidArgument("reference F1 must be > 0");
  return 1.0 - f1 / f1_ref;
}

double data_compression(std::size_t topics, std::size_t k_star) {
  if (k_star == 0) throw InvalidArgument("K* must be >= 1");
  return static_cast<double>(topics) / static_cast<double>(k_star);
}

// ---------------------------------------------------------------------------
// Experiments

std::vector<SelectionPlan> plan_selections(std::span<const TopicScore> scores,
                                           const ExperimentOptions& options) {
  std::vector<SelectionPlan> plans;
  for (std::size_t k_star : options.k_star) {
    for (const auto& strategy : options.strategies) {
      if (strategy.kind == SelectionStrategy::Kind::Random) {
        for (std::size_t d = 0; d < options.random_draws; ++d) {
          const auto seed = derive_seed(options.seed, (static_cast<std::uint64_t>(k_star) << 20) + d);
          plans.push_back({strategy, k_star, d, select_random(scores.size(), k_star, seed)});
        }
      } else {
        plans.push_back({strategy, k_star, 0, select_by_score(scores, strategy.metric, k_star)});
      }
    }
  }
  return plans;
}

std::vector<EvalReport> evaluate_plans(const std::string& model_label, const Matrix& features,
                                       std::span<const std::size_t> labels,
                                       std::span<const SelectionPlan> plans,
                                       const F1Summary& reference,
                                       const ExperimentOptions& options) {
  const std::size_t K = features.cols();
  std::map<std::vector<std::size_t>, F1Summary> cache;
  auto evaluate = [&](const std::vector<std::size_t>& topics) -> const F1Summary& {
    auto it = cache.find(topics);
    if (it == cache.end()) {
      const auto restricted = restrict_columns(features, topics, options.renormalize);
      it = cache.emplace(topics, cross_validate_f1(restricted, labels, options.cv)).first;
    }
    return it->second;
  };

  std::vector<EvalReport> reports;
  std::vector<std::size_t> k_order;
  for (const auto& p : plans) {
    if (std::find(k_order.begin(), k_order.end(), p.k_star) == k_order.end()) {
      k_order.push_back(p.k_star);
    }
  }
  for (std::size_t k_star : k_order) {
    EvalReport report;
    report.model = model_label;
    report.topics = K;
    report.k_star = k_star;
    report.data_compression = data_compression(K, k_star);

    std::vector<std::string> names;
    std::map<std::string, std::vector<const SelectionPlan*>> by_strategy;
    for (const auto& p : plans) {
      if (p.k_star != k_star) continue;
      const auto name = p.strategy.name();
      if (!by_strategy.contains(name)) names.push_back(name);
      by_strategy[name].push_back(&p);
    }
    for (const auto& name : names) {
      const auto& group = by_strategy[name];
      StrategyResult r;
      r.strategy = name;
      r.draws = group.size();
      if (group.size() == 1 && group.front()->strategy.kind == SelectionStrategy::Kind::ByScore) {
        const auto& s = evaluate(group.front()->topics);
        r.f1_mean = s.mean;
        r.f1_std = s.std;
        r.information_loss = information_loss(s.mean, reference.mean);
      } else {
        std::vector<double> means, losses;
        for (const auto* p : group) {
          const auto& s = evaluate(p->topics);
          means.push_back(s.mean);
          losses.push_back(information_loss(s.mean, reference.mean));
        }
        r.f1_mean = mean_of(means);
        r.f1_std = sample_std(means);
        r.information_loss = mean_of(losses);
      }
      report.results.push_back(std::move(r));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<EvalReport> run_experiment(const std::string& model_label, const Matrix& features,
                                       std::span<const std::size_t> labels,
                                       std::span<const TopicScore> scores,
                                       const F1Summary& reference,
                                       const ExperimentOptions& options) {
  if (scores.size() != features.cols()) {
    throw InvalidArgument("one topic score per feature column is required");
  }
  const auto plans = plan_selections(scores, options);
  return evaluate_plans(model_label, features, labels, plans, reference, options);
}

}  // namespace topicfilter

#include "topicfilter/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topicfilter/error.hpp"
#include "topicfilter/parallel.hpp"
#include "topicfilter/random.hpp"

namespace topicfilter {
namespace {

std::size_t argmax_lowest(std::span<const std::uint32_t> counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

double gini(std::span<const std::uint32_t> counts, double total) {
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (auto c : counts) {
    const double p = c / total;
    s += p * p;
  }
  return 1.0 - s;
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const std::size_t> y, std::size_t classes,
              std::size_t mtry, std::size_t min_leaf, std::mt19937_64& rng)
      : x_(x), y_(y), classes_(classes), mtry_(mtry), min_leaf_(min_leaf), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> samples) {
    nodes_.clear();
    struct Pending {
      std::uint32_t node;
      std::vector<std::size_t> samples;
    };
    std::vector<Pending> stack;
    nodes_.emplace_back();
    stack.push_back({0, std::move(samples)});

    while (!stack.empty()) {
      Pending job = std::move(stack.back());
      stack.pop_back();

      std::vector<std::uint32_t> hist(classes_, 0);
      for (auto s : job.samples) ++hist[y_[s]];
      const bool pure =
          std::count_if(hist.begin(), hist.end(), [](auto c) { return c > 0; }) <= 1;

      Split split;
      if (!pure && job.samples.size() >= 2 * min_leaf_) split = find_split(job.samples, hist);
      if (!split.valid) {
        nodes_[job.node].histogram = std::move(hist);
        continue;
      }

      std::vector<std::size_t> left, right;
      for (auto s : job.samples) {
        (x_(s, split.feature) <= split.threshold ? left : right).push_back(s);
      }
      const auto left_id = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_.emplace_back();
      auto& node = nodes_[job.node];
      node.feature = static_cast<std::int32_t>(split.feature);
      node.threshold = split.threshold;
      node.left = left_id;
      node.right = left_id + 1;
      stack.push_back({left_id + 1, std::move(right)});
      stack.push_back({left_id, std::move(left)});
    }
    return DecisionTree(std::move(nodes_));
  }

 private:
  struct Split {
    bool valid = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  // Visits features in random order; stops after mtry features once a valid
  // split has been found, otherwise keeps looking so a constant sampled
  // subset does not end the node early.
  Split find_split(const std::vector<std::size_t>& samples,
                   const std::vector<std::uint32_t>& parent_hist) {
    const std::size_t F = x_.cols();
    std::vector<std::size_t> features(F);
    std::iota(features.begin(), features.end(), std::size_t{0});

    Split best;
    const double n = static_cast<double>(samples.size());
    std::vector<std::size_t> order(samples);
    std::vector<std::uint32_t> left_hist(classes_), right_hist(classes_);

    for (std::size_t visited = 0; visited < F; ++visited) {
      if (visited >= mtry_ && best.valid) break;
      const std::size_t pick = visited + rng_() % (F - visited);
      std::swap(features[visited], features[pick]);
      const std::size_t f = features[visited];

      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
      if (x_(order.front(), f) == x_(order.back(), f)) continue;

      std::fill(left_hist.begin(), left_hist.end(), 0);
      right_hist = parent_hist;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto c = y_[order[i]];
        ++left_hist[c];
        --right_hist[c];
        const double v = x_(order[i], f);
        const double next = x_(order[i + 1], f);
        if (v == next) continue;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = order.size() - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) continue;
        const double impurity =
            (n_left * gini(left_hist, static_cast<double>(n_left)) +
             n_right * gini(right_hist, static_cast<double>(n_right))) / n;
        if (!best.valid || impurity < best.impurity) {
          double threshold = v + (next - v) / 2.0;
          if (!(threshold < next)) threshold = v;
          best = {true, f, threshold, impurity};
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const std::size_t> y_;
  std::size_t classes_;
  std::size_t mtry_;
  std::size_t min_leaf_;
  std::mt19937_64& rng_;
  std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

std::size_t DecisionTree::predict(std::span<const double> row) const {
  std::uint32_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return argmax_lowest(nodes_[i].histogram);
}

std::size_t ForestModel::predict(std::span<const double> row) const {
  std::vector<std::uint32_t> votes(classes_, 0);
  for (const auto& t : trees_) ++votes[t.predict(row)];
  return argmax_lowest(votes);
}

std::vector<std::size_t> ForestModel::predict(const Matrix& rows) const {
  std::vector<std::size_t> out(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) out[r] = predict(rows.row(r));
  return out;
}

ForestModel train_forest(const Matrix& features, std::span<const std::size_t> labels,
                         const ForestOptions& options) {
  const std::size_t N = features.rows();
  const std::size_t F = features.cols();
  if (N == 0 || F == 0) throw InvalidArgument("forest needs a non-empty feature matrix");
  if (labels.size() != N) throw InvalidArgument("label count does not match feature rows");
  if (options.trees == 0) throw InvalidArgument("forest needs at least one tree");
  if (options.min_leaf == 0) throw InvalidArgument("min_leaf must be >= 1");

  const std::size_t classes = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<bool> seen(classes, false);
  for (auto y : labels) seen[y] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw InvalidArgument("forest needs at least two classes");
  }

  const std::size_t mtry = std::clamp<std::size_t>(
      options.features_per_split.value_or(
          static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(F))))),
      1, F);

  std::vector<DecisionTree> trees(options.trees);
  parallel_for(options.trees, options.workers, [&](std::size_t t) {
    auto rng = make_rng(options.seed, t);
    std::vector<std::size_t> bootstrap(N);
    for (auto& s : bootstrap) s = rng() % N;
    TreeBuilder builder(features, labels, classes, mtry, options.min_leaf, rng);
    trees[t] = builder.build(std::move(bootstrap));
  });
  return ForestModel(std::move(trees), classes, options.seed);
}

}  // namespace topicfilter

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "topicfilter/matrix.hpp"

namespace topicfilter {

struct ForestOptions {
  std::size_t trees = 100;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t min_leaf = 1;
  /// Features examined per split; defaults to floor(sqrt(F)).
  std::optional<std::size_t> features_per_split;
};

/// CART classification tree with axis-aligned splits and Gini impurity.
class DecisionTree {
 public:
  struct Node {
    /// -1 marks a leaf.
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    /// Per-class sample counts (leaves only).
    std::vector<std::uint32_t> histogram;
  };

  DecisionTree() = default;
  explicit DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  /// Majority class of the reached leaf; ties go to the lowest class index.
  std::size_t predict(std::span<const double> row) const;
  std::span<const Node> nodes() const noexcept { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

class ForestModel {
 public:
  ForestModel() = default;
  ForestModel(std::vector<DecisionTree> trees, std::size_t classes, std::uint64_t seed)
      : trees_(std::move(trees)), classes_(classes), seed_(seed) {}

  /// Majority vote over trees; ties go to the lowest class index.
  std::size_t predict(std::span<const double> row) const;
  std::vector<std::size_t> predict(const Matrix& rows) const;

  std::span<const DecisionTree> trees() const noexcept { return trees_; }
  std::size_t tree_count() const noexcept { return trees_.size(); }
  std::size_t classes() const noexcept { return classes_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::vector<DecisionTree> trees_;
  std::size_t classes_ = 0;
  std::uint64_t seed_ = 0;
};

/// Random forest: every tree sees a bootstrap sample and considers a random
/// feature subset at each split, growing until nodes are pure or cannot be
/// split. Labels are class indices. Throws InvalidArgument when fewer than
/// two classes are present, the matrix is empty, or sizes disagree.
ForestModel train_forest(const Matrix& features, std::span<const std::size_t> labels,
                         const ForestOptions& options = {});

}  // namespace topicfilter

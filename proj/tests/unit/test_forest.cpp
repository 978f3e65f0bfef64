#include <gtest/gtest.h>

#include <random>

#include "topicfilter/error.hpp"
#include "topicfilter/evaluation.hpp"
#include "topicfilter/forest.hpp"

using namespace topicfilter;

namespace {

struct Dataset {
  Matrix x;
  std::vector<std::size_t> y;
};

// Class c occupies x0 in [c, c + 0.8); remaining features are noise.
Dataset separable(std::size_t n, std::size_t classes, std::size_t features, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.8);
  Dataset d{Matrix(n, features), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.y[i] = i % classes;
    d.x(i, 0) = static_cast<double>(d.y[i]) + u(rng);
    for (std::size_t f = 1; f < features; ++f) d.x(i, f) = u(rng);
  }
  return d;
}

}  // namespace

TEST(Forest, SeparableTrainingDataIsFit) {
  const auto d = separable(120, 2, 3, 1);
  ForestOptions o;
  o.trees = 25;
  const auto model = train_forest(d.x, d.y, o);
  EXPECT_EQ(model.tree_count(), 25u);
  EXPECT_DOUBLE_EQ(macro_f1(d.y, model.predict(d.x), 2), 1.0);
}

TEST(Forest, ConstantFeaturesPredictMajority) {
  Matrix x(10, 2, 1.0);
  std::vector<std::size_t> y{0, 1, 1, 1, 1, 1, 1, 0, 1, 1};
  ForestOptions o;
  o.trees = 15;
  const auto model = train_forest(x, y, o);
  for (auto p : model.predict(x)) EXPECT_EQ(p, 1u);
}

TEST(Forest, TiesGoToLowestClass) {
  Matrix x(4, 1, 0.0);
  std::vector<std::size_t> y{1, 0, 1, 0};
  ForestOptions o;
  o.trees = 1;
  // Bootstrap may unbalance the leaf; force a balanced one by hand instead.
  DecisionTree::Node leaf;
  leaf.histogram = {2, 2};
  const DecisionTree tree({leaf});
  const std::vector<double> row{0.0};
  EXPECT_EQ(tree.predict(row), 0u);
  const ForestModel forest({tree, tree}, 2, 0);
  EXPECT_EQ(forest.predict(row), 0u);
  EXPECT_NO_THROW(train_forest(x, y, o));
}

TEST(Forest, DeterministicAcrossRunsAndWorkerCounts) {
  const auto d = separable(90, 3, 4, 2);
  ForestOptions o;
  o.trees = 20;
  o.seed = 77;
  const auto a = train_forest(d.x, d.y, o).predict(d.x);
  EXPECT_EQ(a, train_forest(d.x, d.y, o).predict(d.x));
  o.workers = 3;
  EXPECT_EQ(a, train_forest(d.x, d.y, o).predict(d.x));
}

TEST(Forest, Preconditions) {
  Matrix x(3, 1, 0.0);
  EXPECT_THROW(train_forest(x, std::vector<std::size_t>{0, 0, 0}), InvalidArgument);
  EXPECT_THROW(train_forest(x, std::vector<std::size_t>{0, 1}), InvalidArgument);
  EXPECT_THROW(train_forest(Matrix(), std::vector<std::size_t>{}), InvalidArgument);
}

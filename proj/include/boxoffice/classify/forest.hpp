#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "boxoffice/classify/logistic.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"
#include "boxoffice/rng.hpp"

namespace boxoffice::classify {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;   // row <= threshold
  int right = -1;  // row > threshold
  int vote = 0;    // leaf majority label (ties vote 0)

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

/// CART classification tree on binary labels, grown until leaves are pure or
/// cannot be split. Split quality is the Gini impurity decrease.
class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  /// `samples` lists training rows, repeats allowed (bootstrap). Each node
  /// inspects `max_features` random features and keeps drawing until a valid
  /// split is found or every feature has been tried.
  void fit(const FeatureMatrix& x, std::span<const int> labels, std::vector<std::size_t> samples,
           std::size_t max_features, Rng& rng) {
    nodes_.clear();
    if (samples.empty()) {
      nodes_.push_back({});
      return;
    }
    const auto d = static_cast<std::size_t>(x.cols());
    max_features = std::clamp<std::size_t>(max_features, 1, d);

    struct Task {
      int node;
      std::vector<std::size_t> rows;
    };
    std::vector<Task> stack;
    nodes_.push_back({});
    stack.push_back({0, std::move(samples)});

    std::vector<std::size_t> features(d);
    std::vector<std::pair<double, int>> column;
    while (!stack.empty()) {
      Task task = std::move(stack.back());
      stack.pop_back();
      const auto& rows = task.rows;

      std::size_t positives = 0;
      for (const auto r : rows) positives += static_cast<std::size_t>(labels[r]);
      const std::size_t total = rows.size();
      nodes_[static_cast<std::size_t>(task.node)].vote = 2 * positives > total ? 1 : 0;
      if (positives == 0 || positives == total) continue;

      for (std::size_t f = 0; f < d; ++f) features[f] = f;
      int best_feature = -1;
      double best_threshold = 0.0;
      double best_impurity = 0.0;
      for (std::size_t tried = 0; tried < d; ++tried) {
        if (tried >= max_features && best_feature >= 0) break;
        const auto pick = tried + static_cast<std::size_t>(rng.below(d - tried));
        std::swap(features[tried], features[pick]);
        const auto f = static_cast<Eigen::Index>(features[tried]);

        column.clear();
        for (const auto r : rows) column.emplace_back(x(static_cast<Eigen::Index>(r), f), labels[r]);
        std::sort(column.begin(), column.end());
        if (column.front().first == column.back().first) continue;

        std::size_t left_pos = 0;
        for (std::size_t i = 0; i + 1 < total; ++i) {
          left_pos += static_cast<std::size_t>(column[i].second);
          if (column[i].first == column[i + 1].first) continue;
          const double nl = static_cast<double>(i + 1);
          const double nr = static_cast<double>(total - i - 1);
          const double pl = static_cast<double>(left_pos) / nl;
          const double pr = static_cast<double>(positives - left_pos) / nr;
          // Weighted child Gini, up to the constant 2/total.
          const double impurity = nl * pl * (1.0 - pl) + nr * pr * (1.0 - pr);
          if (best_feature < 0 || impurity < best_impurity) {
            best_feature = static_cast<int>(f);
            best_impurity = impurity;
            best_threshold = 0.5 * (column[i].first + column[i + 1].first);
            if (best_threshold >= column[i + 1].first) best_threshold = column[i].first;
          }
        }
      }
      if (best_feature < 0) continue;

      std::vector<std::size_t> left_rows;
      std::vector<std::size_t> right_rows;
      for (const auto r : rows) {
        (x(static_cast<Eigen::Index>(r), best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
      }
      const int left = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      nodes_.push_back({});
      auto& node = nodes_[static_cast<std::size_t>(task.node)];
      node.feature = best_feature;
      node.threshold = best_threshold;
      node.left = left;
      node.right = left + 1;
      stack.push_back({left + 1, std::move(right_rows)});
      stack.push_back({left, std::move(left_rows)});
    }
  }

  int predict(std::span<const double> row) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
      const auto& n = nodes_[i];
      i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes_[i].vote;
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;
};

struct ForestOptions {
  int n_trees = 100;
  /// Features inspected per split; 0 means floor(sqrt(d)).
  std::size_t max_features = 0;
};

/// Bagged CART trees; the probability is the share of trees voting positive.
class RandomForest {
 public:
  explicit RandomForest(ForestOptions options = {}) : options_(options) {}

  /// Tree t draws from its own stream derive_seed(seed, t), so changing the
  /// tree count never reshuffles the earlier trees.
  void fit(const FeatureMatrix& x, std::span<const int> labels, std::uint64_t seed) {
    require_finite(x, "random_forest_fit");
    require_binary(labels, x.rows(), "random_forest_fit");
    if (x.rows() == 0) throw DomainError("random_forest_fit: empty training set");
    if (options_.n_trees < 1) throw DomainError("random_forest_fit: need at least one tree");
    const auto n = static_cast<std::size_t>(x.rows());
    const std::size_t mtry = options_.max_features > 0
                                 ? options_.max_features
                                 : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols()))));
    seed_ = seed;
    trees_.assign(static_cast<std::size_t>(options_.n_trees), DecisionTree{});
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      Rng rng(derive_seed(seed, t));
      std::vector<std::size_t> bootstrap(n);
      for (auto& r : bootstrap) r = static_cast<std::size_t>(rng.below(n));
      trees_[t].fit(x, labels, std::move(bootstrap), mtry, rng);
    }
  }

  double predict_probability(std::span<const double> row) const {
    if (trees_.empty()) throw DomainError("random_forest: model is not trained");
    int votes = 0;
    for (const auto& tree : trees_) votes += tree.predict(row);
    return static_cast<double>(votes) / static_cast<double>(trees_.size());
  }

  const std::vector<DecisionTree>& trees() const { return trees_; }
  std::uint64_t seed() const { return seed_; }
  const ForestOptions& options() const { return options_; }

  static RandomForest from_trees(std::vector<DecisionTree> trees, std::uint64_t seed, ForestOptions options = {}) {
    RandomForest f(options);
    f.options_.n_trees = static_cast<int>(trees.size());
    f.trees_ = std::move(trees);
    f.seed_ = seed;
    return f;
  }

 private:
  ForestOptions options_;
  std::vector<DecisionTree> trees_;
  std::uint64_t seed_ = 0;
};

}  // namespace boxoffice::classify

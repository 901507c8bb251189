#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "boxoffice/classify/logistic.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::classify {

/// k nearest neighbours by Euclidean distance. Equidistant neighbours are
/// taken in training-row order.
class KNearestNeighbors {
 public:
  explicit KNearestNeighbors(std::size_t k = 5) : k_(k) {}

  void fit(const FeatureMatrix& x, std::span<const int> labels, std::uint64_t /*seed*/ = 0) {
    require_finite(x, "knn_fit");
    require_binary(labels, x.rows(), "knn_fit");
    if (k_ == 0) throw DomainError("knn_fit: k must be positive");
    if (static_cast<std::size_t>(x.rows()) < k_) throw DomainError("knn_fit: fewer training rows than k");
    train_ = x;
    labels_.assign(labels.begin(), labels.end());
  }

  /// Training rows of the k nearest neighbours, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> row) const {
    if (static_cast<Eigen::Index>(row.size()) != train_.cols()) throw DomainError("knn: dimension mismatch");
    const Eigen::Map<const Eigen::RowVectorXd> q(row.data(), train_.cols());
    std::vector<std::pair<double, std::size_t>> dist(static_cast<std::size_t>(train_.rows()));
    for (Eigen::Index i = 0; i < train_.rows(); ++i) {
      dist[static_cast<std::size_t>(i)] = {(train_.row(i) - q).squaredNorm(), static_cast<std::size_t>(i)};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());
    std::vector<std::size_t> out;
    out.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) out.push_back(dist[i].second);
    return out;
  }

  double predict_probability(std::span<const double> row) const {
    if (labels_.empty()) throw DomainError("knn: model is not trained");
    std::size_t positives = 0;
    for (const auto i : neighbours(row)) positives += static_cast<std::size_t>(labels_[i]);
    return static_cast<double>(positives) / static_cast<double>(k_);
  }

  std::size_t k() const { return k_; }
  const FeatureMatrix& training_rows() const { return train_; }
  const std::vector<int>& training_labels() const { return labels_; }

 private:
  std::size_t k_;
  FeatureMatrix train_;
  std::vector<int> labels_;
};

}  // namespace boxoffice::classify

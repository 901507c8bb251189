#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "boxoffice/classify/frank_hall.hpp"
#include "boxoffice/classify/lbfgs.hpp"
#include "boxoffice/classify/logistic.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::classify {

struct AllThresholdOptions {
  int max_iter = 1000;
  double l2 = 1e-4;
};

/// All-threshold ordinal logistic regression: one score w.x and K-1 ordered
/// cut points. Every threshold on the wrong side of the score is penalised
/// with a logistic loss.
///
/// Parameters are packed as [w (d), theta_0, g_1 .. g_{K-2}] with
/// theta_k = theta_0 + sum_{j<=k} exp(g_j), which keeps the cut points
/// strictly increasing.
struct AllThresholdModel {
  Eigen::VectorXd weights;
  std::vector<double> thresholds;
  std::uint64_t seed = 0;

  int num_classes() const { return static_cast<int>(thresholds.size()) + 1; }

  double score(std::span<const double> row) const {
    if (static_cast<Eigen::Index>(row.size()) != weights.size()) throw DomainError("all_threshold: dimension mismatch");
    return Eigen::Map<const Eigen::VectorXd>(row.data(), weights.size()).dot(weights);
  }
};

namespace detail {

inline std::vector<double> unpack_thresholds(const Eigen::VectorXd& params, Eigen::Index d, int num_classes) {
  std::vector<double> theta(static_cast<std::size_t>(num_classes - 1));
  theta[0] = params(d);
  for (std::size_t k = 1; k < theta.size(); ++k) {
    theta[k] = theta[k - 1] + std::exp(params(d + static_cast<Eigen::Index>(k)));
  }
  return theta;
}

}  // namespace detail

/// Summed all-threshold loss plus (l2/2)|w|^2, divided by the row count; fills `grad`
/// when non-null.
inline double all_threshold_objective(const FeatureMatrix& x, std::span<const int> labels, int num_classes,
                                      const Eigen::VectorXd& params, double l2, Eigen::VectorXd* grad) {
  const auto d = x.cols();
  const auto n = static_cast<double>(x.rows());
  const auto cuts = static_cast<std::size_t>(num_classes - 1);
  const auto w = params.head(d);
  const auto theta = detail::unpack_thresholds(params, d, num_classes);
  const Eigen::VectorXd scores = x * w;

  double loss = 0.0;
  Eigen::VectorXd d_score(x.rows());      // dL/d(score_i)
  std::vector<double> d_theta(cuts, 0.0);  // dL/d(theta_k)
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    double ds = 0.0;
    for (std::size_t k = 0; k < cuts; ++k) {
      const double s = y <= static_cast<int>(k) ? 1.0 : -1.0;
      const double margin = s * (theta[k] - scores(i));
      loss += softplus(-margin);
      const double dm = -sigmoid(-margin);  // d softplus(-m) / dm
      d_theta[k] += dm * s;
      ds -= dm * s;
    }
    d_score(i) = ds;
  }
  loss = (loss + 0.5 * l2 * w.squaredNorm()) / n;

  if (grad != nullptr) {
    grad->resize(params.size());
    grad->head(d) = (x.transpose() * d_score + l2 * w) / n;
    for (auto& g : d_theta) g /= n;
    double tail = 0.0;  // sum of dL/dtheta_k for k >= j
    for (std::size_t j = cuts; j-- > 1;) {
      tail += d_theta[j];
      (*grad)(d + static_cast<Eigen::Index>(j)) = tail * std::exp(params(d + static_cast<Eigen::Index>(j)));
    }
    (*grad)(d) = tail + d_theta[0];
  }
  return loss;
}

inline AllThresholdModel all_threshold_fit(const FeatureMatrix& x, std::span<const int> labels, int num_classes,
                                           std::uint64_t seed = 0, const AllThresholdOptions& options = {}) {
  require_finite(x, "all_threshold_fit");
  if (num_classes < 2) throw DomainError("all_threshold_fit: need at least two classes");
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) throw DomainError("all_threshold_fit: label count mismatch");
  if (x.rows() == 0) throw DomainError("all_threshold_fit: empty training set");
  for (const int y : labels) {
    if (y < 0 || y >= num_classes) throw DomainError("all_threshold_fit: label out of range");
  }
  const auto d = x.cols();
  Eigen::VectorXd params = Eigen::VectorXd::Zero(d + num_classes - 1);
  params(d) = -0.5 * (num_classes - 2);  // unit-spaced cut points centred on zero

  LbfgsOptions opt;
  opt.max_iter = options.max_iter;
  const auto result = lbfgs_minimize(
      [&](const Eigen::VectorXd& p, Eigen::VectorXd& g) {
        return all_threshold_objective(x, labels, num_classes, p, options.l2, &g);
      },
      params, opt);

  AllThresholdModel model;
  model.weights = result.x.head(d);
  model.thresholds = detail::unpack_thresholds(result.x, d, num_classes);
  model.seed = seed;
  return model;
}

/// Number of cut points the score reaches.
inline int all_threshold_predict(const AllThresholdModel& model, std::span<const double> row) {
  const double s = model.score(row);
  int label = 0;
  for (const double t : model.thresholds) label += s >= t ? 1 : 0;
  return label;
}

/// Cumulative-logit class probabilities, P(y <= k) = sigmoid(theta_k - w.x).
inline std::vector<double> all_threshold_class_scores(const AllThresholdModel& model, std::span<const double> row) {
  const double s = model.score(row);
  std::vector<double> exceed;
  exceed.reserve(model.thresholds.size());
  for (const double t : model.thresholds) exceed.push_back(1.0 - sigmoid(t - s));
  return frank_hall_scores(exceed);
}

}  // namespace boxoffice::classify

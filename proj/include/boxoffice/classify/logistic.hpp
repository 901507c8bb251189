#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "boxoffice/classify/lbfgs.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::classify {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

inline void require_finite(const FeatureMatrix& x, const char* who) {
  if (!x.allFinite()) throw DomainError(std::string(who) + ": non-finite feature value");
}

inline void require_binary(std::span<const int> labels, Eigen::Index rows, const char* who) {
  if (static_cast<Eigen::Index>(labels.size()) != rows) throw DomainError(std::string(who) + ": label count mismatch");
  for (const int y : labels) {
    if (y != 0 && y != 1) throw DomainError(std::string(who) + ": labels must be 0 or 1");
  }
}

enum class LogisticSolver { Lbfgs, GradientDescent };

struct LogisticOptions {
  int max_iter = 150;
  double l2 = 1e-4;
  LogisticSolver solver = LogisticSolver::Lbfgs;
  // Gradient-descent schedule: learning_rate / (1 + t * decay).
  double learning_rate = 0.1;
  double decay = 1e-3;
};

/// Binary logistic regression on summed log-loss plus (l2/2)|w|^2 (bias unpenalised),
/// divided by the row count.
class LogisticRegression {
 public:
  explicit LogisticRegression(LogisticOptions options = {}) : options_(options) {}

  /// params = [w_0 .. w_{d-1}, bias]. Returns the objective, fills `grad` when non-null.
  static double objective(const FeatureMatrix& x, std::span<const int> labels, const Eigen::VectorXd& params,
                          double l2, Eigen::VectorXd* grad) {
    const auto d = x.cols();
    const auto n = static_cast<double>(x.rows());
    const auto w = params.head(d);
    const double b = params(d);
    const Eigen::VectorXd scores = (x * w).array() + b;
    double loss = 0.0;
    Eigen::VectorXd residual(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double s = labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
      loss += softplus(-s * scores(i));
      residual(i) = sigmoid(scores(i)) - static_cast<double>(labels[static_cast<std::size_t>(i)]);
    }
    loss = (loss + 0.5 * l2 * w.squaredNorm()) / n;
    if (grad != nullptr) {
      grad->resize(d + 1);
      grad->head(d) = (x.transpose() * residual + l2 * w) / n;
      (*grad)(d) = residual.sum() / n;
    }
    return loss;
  }

  void fit(const FeatureMatrix& x, std::span<const int> labels, std::uint64_t /*seed*/ = 0) {
    require_finite(x, "logistic_fit");
    require_binary(labels, x.rows(), "logistic_fit");
    if (x.rows() == 0) throw DomainError("logistic_fit: empty training set");
    Eigen::VectorXd params = Eigen::VectorXd::Zero(x.cols() + 1);
    const double l2 = options_.l2;
    if (options_.solver == LogisticSolver::Lbfgs) {
      LbfgsOptions opt;
      opt.max_iter = options_.max_iter;
      const auto result = lbfgs_minimize(
          [&](const Eigen::VectorXd& p, Eigen::VectorXd& g) { return objective(x, labels, p, l2, &g); }, params, opt);
      params = result.x;
      iterations_ = result.iterations;
    } else {
      Eigen::VectorXd grad;
      for (int t = 0; t < options_.max_iter; ++t) {
        objective(x, labels, params, l2, &grad);
        params -= options_.learning_rate / (1.0 + t * options_.decay) * grad;
      }
      iterations_ = options_.max_iter;
    }
    weights_ = params.head(x.cols());
    bias_ = params(x.cols());
  }

  double decision(std::span<const double> row) const {
    if (static_cast<Eigen::Index>(row.size()) != weights_.size()) throw DomainError("logistic: dimension mismatch");
    return Eigen::Map<const Eigen::VectorXd>(row.data(), weights_.size()).dot(weights_) + bias_;
  }

  double predict_probability(std::span<const double> row) const { return sigmoid(decision(row)); }

  const Eigen::VectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }
  int iterations() const { return iterations_; }
  const LogisticOptions& options() const { return options_; }

  /// Rebuilds a trained model from stored parameters.
  static LogisticRegression from_parameters(Eigen::VectorXd weights, double bias, LogisticOptions options = {}) {
    LogisticRegression m(options);
    m.weights_ = std::move(weights);
    m.bias_ = bias;
    return m;
  }

 private:
  LogisticOptions options_;
  Eigen::VectorXd weights_;
  double bias_ = 0.0;
  int iterations_ = 0;
};

}  // namespace boxoffice::classify

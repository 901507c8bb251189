#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "boxoffice/classify/forest.hpp"
#include "boxoffice/classify/knn.hpp"
#include "boxoffice/classify/logistic.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"
#include "boxoffice/rng.hpp"

namespace boxoffice::classify {

template <typename C>
concept BinaryClassifier = requires(C c, const C& cc, const FeatureMatrix& x, std::span<const int> y,
                                    std::uint64_t seed, std::span<const double> row) {
  c.fit(x, y, seed);
  { cc.predict_probability(row) } -> std::convertible_to<double>;
};

static_assert(BinaryClassifier<LogisticRegression>);
static_assert(BinaryClassifier<RandomForest>);
static_assert(BinaryClassifier<KNearestNeighbors>);

using AnyBinaryClassifier = std::variant<LogisticRegression, RandomForest, KNearestNeighbors>;

enum class BaseKind { Logistic, Forest, Knn };

inline std::string_view base_kind_name(BaseKind kind) {
  switch (kind) {
    case BaseKind::Logistic: return "logistic";
    case BaseKind::Forest: return "forest";
    case BaseKind::Knn: return "knn";
  }
  return "?";
}

struct BaseOptions {
  LogisticOptions logistic;
  ForestOptions forest;
  std::size_t knn_k = 5;
};

inline AnyBinaryClassifier make_binary(BaseKind kind, const BaseOptions& options) {
  switch (kind) {
    case BaseKind::Logistic: return LogisticRegression(options.logistic);
    case BaseKind::Forest: return RandomForest(options.forest);
    case BaseKind::Knn: return KNearestNeighbors(options.knn_k);
  }
  throw DomainError("unknown base classifier kind");
}

inline double predict_probability(const AnyBinaryClassifier& c, std::span<const double> row) {
  return std::visit([&](const auto& m) { return m.predict_probability(row); }, c);
}

/// K-1 binary models; member k estimates P(label > k).
struct FrankHallModel {
  int num_classes = 0;
  BaseKind kind = BaseKind::Logistic;
  std::uint64_t seed = 0;
  std::vector<AnyBinaryClassifier> members;
};

/// Exceedance probabilities are snapped to this grid before differencing so
/// that every class score, and every partial sum of them, is exact.
inline constexpr double kProbabilityGrid = 0x1.0p-40;

inline double snap_probability(double p) {
  return std::round(std::clamp(p, 0.0, 1.0) / kProbabilityGrid) * kProbabilityGrid;
}

/// Class scores from exceedance probabilities P(label > k), k = 0..K-2:
/// score(0) = 1 - P_0, score(k) = P_{k-1} - P_k, score(K-1) = P_{K-2}.
/// Scores can be negative and are kept as they are.
inline std::vector<double> frank_hall_scores(std::span<const double> exceed) {
  if (exceed.empty()) throw DomainError("frank_hall_scores: need at least one probability");
  std::vector<double> cumulative;
  cumulative.reserve(exceed.size() + 2);
  cumulative.push_back(1.0);
  for (const double p : exceed) cumulative.push_back(snap_probability(p));
  cumulative.push_back(0.0);
  std::vector<double> scores(exceed.size() + 1);
  for (std::size_t k = 0; k < scores.size(); ++k) scores[k] = cumulative[k] - cumulative[k + 1];
  return scores;
}

/// Index of the largest score, smallest index on ties.
inline int argmax_smallest(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return static_cast<int>(best);
}

inline FrankHallModel frank_hall_fit(const FeatureMatrix& x, std::span<const int> labels, int num_classes,
                                     BaseKind kind, std::uint64_t seed, const BaseOptions& options = {}) {
  if (num_classes < 2) throw DomainError("frank_hall_fit: need at least two classes");
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) throw DomainError("frank_hall_fit: label count mismatch");
  for (const int y : labels) {
    if (y < 0 || y >= num_classes) throw DomainError("frank_hall_fit: label out of range");
  }
  FrankHallModel model{num_classes, kind, seed, {}};
  std::vector<int> exceeds(labels.size());
  for (int k = 0; k + 1 < num_classes; ++k) {
    for (std::size_t i = 0; i < labels.size(); ++i) exceeds[i] = labels[i] > k ? 1 : 0;
    auto member = make_binary(kind, options);
    std::visit([&](auto& m) { m.fit(x, exceeds, derive_seed(seed, static_cast<std::uint64_t>(k))); }, member);
    model.members.push_back(std::move(member));
  }
  return model;
}

inline std::vector<double> frank_hall_class_scores(const FrankHallModel& model, std::span<const double> row) {
  std::vector<double> exceed;
  exceed.reserve(model.members.size());
  for (const auto& m : model.members) exceed.push_back(predict_probability(m, row));
  return frank_hall_scores(exceed);
}

inline int frank_hall_predict(const FrankHallModel& model, std::span<const double> row) {
  return argmax_smallest(frank_hall_class_scores(model, row));
}

}  // namespace boxoffice::classify

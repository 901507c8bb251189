#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "boxoffice/classify/all_threshold.hpp"
#include "boxoffice/classify/frank_hall.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"
#include "boxoffice/rng.hpp"

namespace boxoffice::classify {

using MemberModel = std::variant<FrankHallModel, AllThresholdModel>;

/// Majority vote over member predictions.
struct EnsembleModel {
  int num_classes = 0;
  std::uint64_t seed = 0;
  std::vector<MemberModel> members;
};

using OrdinalModel = std::variant<FrankHallModel, AllThresholdModel, EnsembleModel>;

/// Most frequent label; ties go to the smallest label.
inline int ensemble_vote(std::span<const int> votes) {
  if (votes.empty()) throw DomainError("ensemble_vote: no votes");
  int best = votes[0];
  std::size_t best_count = 0;
  for (const int candidate : votes) {
    std::size_t count = 0;
    for (const int v : votes) count += v == candidate ? 1 : 0;
    if (count > best_count || (count == best_count && candidate < best)) {
      best = candidate;
      best_count = count;
    }
  }
  return best;
}

inline int predict(const MemberModel& model, std::span<const double> row) {
  return std::visit(
      [&](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrankHallModel>) {
          return frank_hall_predict(m, row);
        } else {
          return all_threshold_predict(m, row);
        }
      },
      model);
}

inline int ensemble_predict(const EnsembleModel& model, std::span<const double> row) {
  if (model.members.empty()) throw DomainError("ensemble_predict: empty model list");
  std::vector<int> votes;
  votes.reserve(model.members.size());
  for (const auto& m : model.members) votes.push_back(predict(m, row));
  return ensemble_vote(votes);
}

inline int predict(const OrdinalModel& model, std::span<const double> row) {
  return std::visit(
      [&](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrankHallModel>) {
          return frank_hall_predict(m, row);
        } else if constexpr (std::is_same_v<T, AllThresholdModel>) {
          return all_threshold_predict(m, row);
        } else {
          return ensemble_predict(m, row);
        }
      },
      model);
}

inline int num_classes(const OrdinalModel& model) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AllThresholdModel>) {
          return m.num_classes();
        } else {
          return m.num_classes;
        }
      },
      model);
}

/// Per-class scores: Frank-Hall differences, cumulative-logit probabilities,
/// or vote shares for an ensemble.
inline std::vector<double> class_scores(const OrdinalModel& model, std::span<const double> row) {
  return std::visit(
      [&](const auto& m) -> std::vector<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrankHallModel>) {
          return frank_hall_class_scores(m, row);
        } else if constexpr (std::is_same_v<T, AllThresholdModel>) {
          return all_threshold_class_scores(m, row);
        } else {
          std::vector<double> share(static_cast<std::size_t>(m.num_classes), 0.0);
          for (const auto& member : m.members) share.at(static_cast<std::size_t>(predict(member, row))) += 1.0;
          for (auto& s : share) s /= static_cast<double>(m.members.size());
          return share;
        }
      },
      model);
}

enum class ModelKind { FrankHallLogistic, FrankHallForest, FrankHallKnn, AllThreshold, Ensemble };

inline std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::FrankHallLogistic: return "frank-hall-logistic";
    case ModelKind::FrankHallForest: return "frank-hall-forest";
    case ModelKind::FrankHallKnn: return "frank-hall-knn";
    case ModelKind::AllThreshold: return "all-threshold";
    case ModelKind::Ensemble: return "ensemble";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view name) {
  for (const auto kind : {ModelKind::FrankHallLogistic, ModelKind::FrankHallForest, ModelKind::FrankHallKnn,
                          ModelKind::AllThreshold, ModelKind::Ensemble}) {
    if (model_kind_name(kind) == name) return kind;
  }
  throw DomainError("unknown model kind '" + std::string(name) + "'");
}

struct TrainOptions {
  BaseOptions base;
  AllThresholdOptions all_threshold;
};

/// The ensemble holds Frank-Hall logistic, Frank-Hall forest and the
/// all-threshold model, each seeded from its own stream.
inline OrdinalModel train(ModelKind kind, const FeatureMatrix& x, std::span<const int> labels, int num_classes,
                          std::uint64_t seed, const TrainOptions& options = {}) {
  switch (kind) {
    case ModelKind::FrankHallLogistic:
      return frank_hall_fit(x, labels, num_classes, BaseKind::Logistic, seed, options.base);
    case ModelKind::FrankHallForest:
      return frank_hall_fit(x, labels, num_classes, BaseKind::Forest, seed, options.base);
    case ModelKind::FrankHallKnn:
      return frank_hall_fit(x, labels, num_classes, BaseKind::Knn, seed, options.base);
    case ModelKind::AllThreshold:
      return all_threshold_fit(x, labels, num_classes, seed, options.all_threshold);
    case ModelKind::Ensemble: {
      EnsembleModel e{num_classes, seed, {}};
      e.members.push_back(frank_hall_fit(x, labels, num_classes, BaseKind::Logistic, derive_seed(seed, 0), options.base));
      e.members.push_back(frank_hall_fit(x, labels, num_classes, BaseKind::Forest, derive_seed(seed, 1), options.base));
      e.members.push_back(all_threshold_fit(x, labels, num_classes, derive_seed(seed, 2), options.all_threshold));
      return e;
    }
  }
  throw DomainError("unknown model kind");
}

}  // namespace boxoffice::classify

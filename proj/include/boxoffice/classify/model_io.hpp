#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "boxoffice/classify/ordinal.hpp"
#include "boxoffice/error.hpp"

namespace boxoffice::classify {

namespace detail {

inline nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Eigen::VectorXd vector_from(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline BaseKind base_kind_from(const std::string& name) {
  for (const auto k : {BaseKind::Logistic, BaseKind::Forest, BaseKind::Knn}) {
    if (base_kind_name(k) == name) return k;
  }
  throw DomainError("unknown base classifier '" + name + "'");
}

inline nlohmann::json binary_json(const AnyBinaryClassifier& c) {
  if (const auto* lr = std::get_if<LogisticRegression>(&c)) {
    return {{"weights", vector_json(lr->weights())}, {"bias", lr->bias()}};
  }
  if (const auto* rf = std::get_if<RandomForest>(&c)) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : rf->trees()) {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& n : t.nodes()) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.vote});
      trees.push_back(std::move(nodes));
    }
    return {{"seed", rf->seed()}, {"max_features", rf->options().max_features}, {"trees", std::move(trees)}};
  }
  const auto& knn = std::get<KNearestNeighbors>(c);
  const auto& x = knn.training_rows();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    rows.push_back(std::vector<double>(x.row(i).data(), x.row(i).data() + x.cols()));
  }
  return {{"k", knn.k()}, {"rows", std::move(rows)}, {"labels", knn.training_labels()}};
}

inline AnyBinaryClassifier binary_from(BaseKind kind, const nlohmann::json& j) {
  switch (kind) {
    case BaseKind::Logistic:
      return LogisticRegression::from_parameters(vector_from(j.at("weights")), j.at("bias").get<double>());
    case BaseKind::Forest: {
      std::vector<DecisionTree> trees;
      for (const auto& t : j.at("trees")) {
        std::vector<TreeNode> nodes;
        for (const auto& n : t) {
          nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(), n.at(3).get<int>(),
                           n.at(4).get<int>()});
        }
        trees.emplace_back(std::move(nodes));
      }
      ForestOptions options;
      options.max_features = j.at("max_features").get<std::size_t>();
      return RandomForest::from_trees(std::move(trees), j.at("seed").get<std::uint64_t>(), options);
    }
    case BaseKind::Knn: {
      const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
      const auto labels = j.at("labels").get<std::vector<int>>();
      const auto d = rows.empty() ? std::size_t{0} : rows.front().size();
      FeatureMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) throw DomainError("knn model: ragged training rows");
        for (std::size_t f = 0; f < d; ++f) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) = rows[i][f];
      }
      KNearestNeighbors knn(j.at("k").get<std::size_t>());
      knn.fit(x, labels);
      return knn;
    }
  }
  throw DomainError("unknown base classifier kind");
}

inline nlohmann::json model_json(const FrankHallModel& m) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& c : m.members) members.push_back(binary_json(c));
  return {{"type", "frank-hall"},
          {"base", std::string(base_kind_name(m.kind))},
          {"num_classes", m.num_classes},
          {"seed", m.seed},
          {"members", std::move(members)}};
}

inline nlohmann::json model_json(const AllThresholdModel& m) {
  return {{"type", "all-threshold"}, {"seed", m.seed}, {"weights", vector_json(m.weights)}, {"thresholds", m.thresholds}};
}

inline MemberModel member_from(const nlohmann::json& j);

}  // namespace detail

inline nlohmann::json to_json(const OrdinalModel& model) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EnsembleModel>) {
          nlohmann::json members = nlohmann::json::array();
          for (const auto& member : m.members) {
            members.push_back(std::visit([](const auto& x) { return detail::model_json(x); }, member));
          }
          return {{"type", "ensemble"}, {"num_classes", m.num_classes}, {"seed", m.seed}, {"members", std::move(members)}};
        } else {
          return detail::model_json(m);
        }
      },
      model);
}

namespace detail {

inline MemberModel member_from(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "frank-hall") {
    FrankHallModel m;
    m.kind = base_kind_from(j.at("base").get<std::string>());
    m.num_classes = j.at("num_classes").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("members")) m.members.push_back(binary_from(m.kind, c));
    if (static_cast<int>(m.members.size()) != m.num_classes - 1) throw DomainError("frank-hall model: wrong member count");
    return m;
  }
  if (type == "all-threshold") {
    AllThresholdModel m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.weights = vector_from(j.at("weights"));
    m.thresholds = j.at("thresholds").get<std::vector<double>>();
    if (m.thresholds.empty()) throw DomainError("all-threshold model: no thresholds");
    return m;
  }
  throw DomainError("unknown model type '" + type + "'");
}

}  // namespace detail

inline OrdinalModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("type").get<std::string>() == "ensemble") {
      EnsembleModel e;
      e.num_classes = j.at("num_classes").get<int>();
      e.seed = j.at("seed").get<std::uint64_t>();
      for (const auto& member : j.at("members")) e.members.push_back(detail::member_from(member));
      if (e.members.empty()) throw DomainError("ensemble model: empty model list");
      return e;
    }
    return std::visit([](auto&& m) -> OrdinalModel { return std::move(m); }, detail::member_from(j));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed model: ") + e.what());
  }
}

inline void save_model(const OrdinalModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << to_json(model).dump() << '\n';
}

inline OrdinalModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace boxoffice::classify

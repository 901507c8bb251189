#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::features {

/// Per-column bounds learned from a training matrix.
struct ScalingParams {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dim() const { return min.size(); }
};

inline ScalingParams fit_scaler(const FeatureMatrix& train) {
  if (train.rows() == 0) throw DomainError("fit_scaler: empty training matrix");
  ScalingParams p;
  p.min.resize(static_cast<std::size_t>(train.cols()));
  p.max.resize(static_cast<std::size_t>(train.cols()));
  for (Eigen::Index c = 0; c < train.cols(); ++c) {
    p.min[static_cast<std::size_t>(c)] = train.col(c).minCoeff();
    p.max[static_cast<std::size_t>(c)] = train.col(c).maxCoeff();
  }
  return p;
}

/// Maps with the training bounds; values outside them are not clamped and
/// constant columns map to zero.
inline std::vector<double> apply_scaler(std::span<const double> row, const ScalingParams& p) {
  if (row.size() != p.dim()) throw DomainError("apply_scaler: dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    const double range = p.max[c] - p.min[c];
    out[c] = range > 0.0 ? (row[c] - p.min[c]) / range : 0.0;
  }
  return out;
}

inline FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalingParams& p) {
  if (static_cast<std::size_t>(m.cols()) != p.dim()) throw DomainError("apply_scaler: dimension mismatch");
  FeatureMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto scaled = apply_scaler(std::span<const double>(m.row(r).data(), static_cast<std::size_t>(m.cols())), p);
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = scaled[static_cast<std::size_t>(c)];
  }
  return out;
}

inline nlohmann::json to_json(const ScalingParams& p) { return {{"min", p.min}, {"max", p.max}}; }

inline ScalingParams scaling_params_from_json(const nlohmann::json& j) {
  ScalingParams p{j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
  if (p.min.size() != p.max.size()) throw DomainError("scaling params: min/max length mismatch");
  for (std::size_t c = 0; c < p.dim(); ++c) {
    if (p.min[c] > p.max[c]) throw DomainError("scaling params: min exceeds max");
  }
  return p;
}

}  // namespace boxoffice::features

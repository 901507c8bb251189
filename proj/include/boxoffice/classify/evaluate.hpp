#pragma once

#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "boxoffice/classify/ordinal.hpp"
#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::classify {

struct EvalReport {
  double bingo = 0.0;     // exact-class rate
  double one_away = 0.0;  // |predicted - true| <= 1 rate
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

inline EvalReport evaluate(std::span<const int> truth, std::span<const int> predicted, int num_classes) {
  if (truth.size() != predicted.size()) throw DomainError("evaluate: length mismatch");
  if (truth.empty()) throw DomainError("evaluate: empty test set");
  EvalReport r;
  r.confusion.assign(static_cast<std::size_t>(num_classes), std::vector<std::size_t>(static_cast<std::size_t>(num_classes), 0));
  std::size_t exact = 0;
  std::size_t near = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i];
    const int p = predicted[i];
    if (t < 0 || t >= num_classes || p < 0 || p >= num_classes) throw DomainError("evaluate: label out of range");
    ++r.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    exact += t == p ? 1 : 0;
    near += std::abs(t - p) <= 1 ? 1 : 0;
  }
  const auto n = static_cast<double>(truth.size());
  r.bingo = static_cast<double>(exact) / n;
  r.one_away = static_cast<double>(near) / n;
  if (r.one_away < r.bingo) throw std::logic_error("evaluate: one-away accuracy below bingo accuracy");
  return r;
}

inline std::vector<int> predict_all(const OrdinalModel& model, const FeatureMatrix& x) {
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out[static_cast<std::size_t>(i)] =
        predict(model, std::span<const double>(x.row(i).data(), static_cast<std::size_t>(x.cols())));
  }
  return out;
}

inline EvalReport evaluate(const OrdinalModel& model, const FeatureMatrix& x, std::span<const int> truth) {
  const auto predicted = predict_all(model, x);
  return evaluate(truth, predicted, num_classes(model));
}

inline nlohmann::json to_json(const EvalReport& r) {
  std::size_t total = 0;
  for (const auto& row : r.confusion) {
    for (const auto c : row) total += c;
  }
  return {{"bingo", r.bingo}, {"one_away", r.one_away}, {"test_size", total}, {"confusion", r.confusion}};
}

}  // namespace boxoffice::classify

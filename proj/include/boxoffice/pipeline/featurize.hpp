#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "boxoffice/classify/buckets.hpp"
#include "boxoffice/features/assemble.hpp"
#include "boxoffice/features/history.hpp"
#include "boxoffice/features/scaler.hpp"
#include "boxoffice/ingest/cpi.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/matrix.hpp"
#include "boxoffice/rng.hpp"
#include "boxoffice/stats/aggregate.hpp"

namespace boxoffice::pipeline {

struct FeaturizeConfig {
  std::uint64_t seed = 0;
  double test_fraction = 0.3;
  classify::ClassBuckets buckets;
  features::RevenueBasis basis = features::RevenueBasis::Adjusted;
  const ingest::CpiTable* cpi = nullptr;  // required for the nominal basis
};

struct FeatureSet {
  std::vector<std::string> ids;
  FeatureMatrix x;  // scaled
  std::vector<int> y;
};

struct FeaturizeResult {
  std::vector<std::size_t> class_counts;  // before balancing
  std::size_t balanced_size = 0;
  FeatureSet train;
  FeatureSet test;
  features::ScalingParams scaler;
  stats::MonthStats month_stats;
};

inline FeatureMatrix assemble_rows(std::span<const ingest::MovieRecord> records, std::span<const std::size_t> rows,
                                   const features::HistoryIndex& index, const stats::MonthStats& months) {
  FeatureMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(features::kFeatureDim));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto v = features::assemble(records[rows[i]], index, months);
    for (std::size_t j = 0; j < v.size(); ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
  }
  return x;
}

/// bucketize -> balance -> split -> history index over everything outside the
/// test split -> assemble -> scale with training bounds.
inline FeaturizeResult featurize(std::span<const ingest::MovieRecord> records, const FeaturizeConfig& config) {
  const int k = config.buckets.num_classes();
  std::vector<int> labels;
  labels.reserve(records.size());
  for (const auto& m : records) labels.push_back(classify::bucketize(m.revenue, config.buckets));

  FeaturizeResult out;
  out.class_counts = classify::class_counts(labels, k);
  const auto selected = classify::balance(labels, k, derive_seed(config.seed, 0));
  out.balanced_size = selected.size();
  const auto parts = classify::split(selected.size(), config.test_fraction, derive_seed(config.seed, 1));

  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (const auto i : parts.train) train_rows.push_back(selected[i]);
  for (const auto i : parts.test) test_rows.push_back(selected[i]);

  std::vector<bool> held_out(records.size(), false);
  for (const auto r : test_rows) held_out[r] = true;
  std::vector<ingest::MovieRecord> visible;
  std::vector<ingest::MovieRecord> train_records;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!held_out[i]) visible.push_back(records[i]);
  }
  for (const auto r : train_rows) train_records.push_back(records[r]);

  const auto index = features::HistoryIndex::build(visible, config.basis, config.cpi);
  out.month_stats = stats::month_stats(train_records);

  const FeatureMatrix train_raw = assemble_rows(records, train_rows, index, out.month_stats);
  const FeatureMatrix test_raw = assemble_rows(records, test_rows, index, out.month_stats);
  out.scaler = features::fit_scaler(train_raw);
  out.train.x = features::apply_scaler(train_raw, out.scaler);
  out.test.x = features::apply_scaler(test_raw, out.scaler);
  for (const auto r : train_rows) {
    out.train.ids.push_back(records[r].id);
    out.train.y.push_back(labels[r]);
  }
  for (const auto r : test_rows) {
    out.test.ids.push_back(records[r].id);
    out.test.y.push_back(labels[r]);
  }
  return out;
}

inline nlohmann::json to_json(const stats::MonthStats& months) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < months.size(); ++i) {
    out.push_back({{"month", i + 1},
                   {"count", months[i].count},
                   {"mean_revenue", months[i].mean_revenue ? nlohmann::json(*months[i].mean_revenue) : nlohmann::json()}});
  }
  return out;
}

inline stats::MonthStats month_stats_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 12) throw DomainError("month stats: expected 12 entries");
  stats::MonthStats out{};
  for (std::size_t i = 0; i < 12; ++i) {
    out[i].count = j[i].at("count").get<std::size_t>();
    const auto& mean = j[i].at("mean_revenue");
    if (!mean.is_null()) out[i].mean_revenue = mean.get<double>();
  }
  return out;
}

}  // namespace boxoffice::pipeline

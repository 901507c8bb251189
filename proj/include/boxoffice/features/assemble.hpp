#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boxoffice/features/familiarity.hpp"
#include "boxoffice/features/history.hpp"
#include "boxoffice/features/power.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/stats/aggregate.hpp"
#include "boxoffice/stats/content_rating.hpp"

namespace boxoffice::features {

inline constexpr std::size_t kDirectorSlots = 3;
inline constexpr std::size_t kCreatorSlots = 5;
inline constexpr std::size_t kProductionSlots = 5;

struct Segment {
  std::string_view name;
  std::size_t offset;
  std::size_t width;
};

// Feature vector layout, in order.
inline constexpr std::array<Segment, 10> kSegments = {{
    {"budget", 0, 1},
    {"runtime", 1, 1},
    {"month", 2, 2},
    {"content_rating", 4, 4},
    {"genre", 8, kGenreSlots * PowerSlot::kWidth},
    {"actor", 38, kActorSlots * PowerSlot::kWidth},
    {"director", 98, kDirectorSlots * PowerSlot::kWidth},
    {"creator", 116, kCreatorSlots * PowerSlot::kWidth},
    {"production", 146, kProductionSlots * PowerSlot::kWidth},
    {"familiarity", 176, 4},
}};

inline constexpr std::size_t kFeatureDim = 180;

constexpr bool segments_tile_layout() {
  std::size_t next = 0;
  for (const auto& s : kSegments) {
    if (s.offset != next) return false;
    next += s.width;
  }
  return next == kFeatureDim;
}
static_assert(segments_tile_layout(), "feature segments must tile exactly 180 dimensions");

using FeatureVector = std::array<double, kFeatureDim>;

/// Header names for the 180 columns, in layout order.
inline std::vector<std::string> feature_names() {
  static constexpr std::array<std::string_view, PowerSlot::kWidth> kPower = {
      "n_movies", "total_revenue", "avg_revenue", "total_raters", "avg_raters", "avg_rating"};
  std::vector<std::string> names = {"budget",    "runtime",  "month",     "month_mean_revenue",
                                    "rating_pg", "rating_r", "rating_tv", "rating_g"};
  auto block = [&](std::string_view prefix, std::size_t slots) {
    for (std::size_t s = 1; s <= slots; ++s) {
      for (const auto field : kPower) names.push_back(std::string(prefix) + std::to_string(s) + "_" + std::string(field));
    }
  };
  block("genre", kGenreSlots);
  block("actor", kActorSlots);
  block("director", kDirectorSlots);
  block("creator", kCreatorSlots);
  block("production", kProductionSlots);
  for (const char* f : {"familiarity_avg_cosine", "familiarity_max_pair_avg_revenue",
                        "familiarity_max_pair_avg_raters", "familiarity_max_pair_avg_rating"}) {
    names.emplace_back(f);
  }
  return names;
}

/// Month number and the training-split mean revenue of that month (0 when unseen).
inline std::pair<double, double> month_features(const ingest::MovieRecord& movie, const stats::MonthStats& train) {
  const auto& stat = train.at(static_cast<std::size_t>(movie.release_month - 1));
  return {static_cast<double>(movie.release_month), stat.mean_revenue.value_or(0.0)};
}

/// One-hot over the (PG, R, TV, G) rating clusters.
inline std::array<double, stats::kRatingClusterCount> content_rating_onehot(const ingest::MovieRecord& movie) {
  std::array<double, stats::kRatingClusterCount> out{};
  out[static_cast<std::size_t>(stats::cluster_content_rating(movie.content_rating))] = 1.0;
  return out;
}

inline FeatureVector assemble(const ingest::MovieRecord& movie, const HistoryIndex& index,
                              const stats::MonthStats& train_month_stats) {
  FeatureVector v{};
  auto put = [&](std::size_t offset, const auto& values) {
    std::copy(values.begin(), values.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
  };
  v[0] = movie.budget.dollars();
  v[1] = static_cast<double>(movie.runtime);
  const auto [month, month_mean] = month_features(movie, train_month_stats);
  v[2] = month;
  v[3] = month_mean;
  put(kSegments[3].offset, content_rating_onehot(movie));
  put(kSegments[4].offset, genre_power(movie, index));
  put(kSegments[5].offset, entity_block(movie, EntityKind::Actor, kActorSlots, index));
  put(kSegments[6].offset, entity_block(movie, EntityKind::Director, kDirectorSlots, index));
  put(kSegments[7].offset, entity_block(movie, EntityKind::Creator, kCreatorSlots, index));
  put(kSegments[8].offset, entity_block(movie, EntityKind::Production, kProductionSlots, index));
  const auto fam = familiarity(movie, index);
  put(kSegments[9].offset, std::array<double, 4>{fam.avg_cosine, fam.max_pair_avg_revenue, fam.max_pair_avg_raters,
                                                 fam.max_pair_avg_rating});
  return v;
}

}  // namespace boxoffice::features

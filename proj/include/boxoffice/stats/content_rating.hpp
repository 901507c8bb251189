#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "boxoffice/error.hpp"

namespace boxoffice::stats {

/// The four merged content-rating groups, in one-hot order.
enum class RatingCluster : int { PG = 0, R = 1, TV = 2, G = 3 };

inline constexpr std::size_t kRatingClusterCount = 4;

/// Every raw label observed on movie items, most frequent first.
inline constexpr std::array<std::string_view, 18> kContentRatingLabels = {
    "PG-13", "R",  "PG", "TV-MA", "G",     "Unrated", "NC-17", "Not Rated", "Approved",
    "X",     "M",  "M/PG", "GP",  "TV-PG", "TV-14",   "TV-Y7", "Passed",    "TV-G"};

inline bool is_known_content_rating(std::string_view label) {
  return std::find(kContentRatingLabels.begin(), kContentRatingLabels.end(), label) !=
         kContentRatingLabels.end();
}

inline RatingCluster cluster_content_rating(std::string_view label) {
  if (label == "PG-13" || label == "PG") return RatingCluster::PG;
  if (label == "G") return RatingCluster::G;
  if (label == "R" || label == "NC-17" || label == "Approved" || label == "X" || label == "M" ||
      label == "M/PG" || label == "GP" || label == "Passed") {
    return RatingCluster::R;
  }
  if (label == "TV-MA" || label == "TV-PG" || label == "TV-14" || label == "TV-Y7" ||
      label == "TV-G" || label == "Unrated" || label == "Not Rated") {
    return RatingCluster::TV;
  }
  throw UnknownRatingError(std::string(label));
}

inline std::string_view cluster_name(RatingCluster c) {
  switch (c) {
    case RatingCluster::PG: return "PG";
    case RatingCluster::R: return "R";
    case RatingCluster::TV: return "TV";
    case RatingCluster::G: return "G";
  }
  return "?";
}

}  // namespace boxoffice::stats

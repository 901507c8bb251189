#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "boxoffice/error.hpp"

namespace boxoffice::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

struct ScaledColumn {
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
};

/// (x - min) / (max - min); a constant column maps to all zeros.
inline ScaledColumn min_max_scale(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("min_max_scale: empty input");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  ScaledColumn out{{}, *lo, *hi};
  out.values.reserve(xs.size());
  const double range = out.max - out.min;
  for (const double x : xs) out.values.push_back(range > 0.0 ? (x - out.min) / range : 0.0);
  return out;
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean: empty input");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// One-based ranks; tied values share the mean of the ranks they span.
inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && xs[order[j]] == xs[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace boxoffice::stats

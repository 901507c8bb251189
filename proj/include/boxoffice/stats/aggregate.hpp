#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boxoffice/error.hpp"
#include "boxoffice/ingest/record.hpp"

namespace boxoffice::stats {

/// Value at year y is the mean of the data in [y - window + 1, y]. Years
/// between the first and last datum are emitted whenever their window holds data.
inline std::map<int, double> rolling_average(const std::map<int, double>& series, int window) {
  if (window < 1) throw DomainError("rolling_average: window must be at least 1");
  std::map<int, double> out;
  if (series.empty()) return out;
  const int first = series.begin()->first;
  const int last = series.rbegin()->first;
  for (int y = first; y <= last; ++y) {
    double sum = 0.0;
    int count = 0;
    for (auto it = series.lower_bound(y - window + 1); it != series.end() && it->first <= y; ++it) {
      sum += it->second;
      ++count;
    }
    if (count > 0) out[y] = sum / count;
  }
  return out;
}

struct MonthStat {
  std::size_t count = 0;
  std::optional<double> mean_revenue;  // empty when no movie fell in the month
};

/// Index 0 is January.
using MonthStats = std::array<MonthStat, 12>;

inline MonthStats month_stats(std::span<const ingest::MovieRecord> records) {
  std::array<double, 12> sums{};
  MonthStats out{};
  for (const auto& m : records) {
    const auto i = static_cast<std::size_t>(m.release_month - 1);
    ++out.at(i).count;
    sums[i] += m.revenue.dollars();
  }
  for (std::size_t i = 0; i < 12; ++i) {
    if (out[i].count > 0) out[i].mean_revenue = sums[i] / static_cast<double>(out[i].count);
  }
  return out;
}

struct YearTotal {
  std::size_t movies = 0;
  double budget = 0.0;
  double revenue = 0.0;
};

inline std::map<int, YearTotal> year_totals(std::span<const ingest::MovieRecord> records) {
  std::map<int, YearTotal> out;
  for (const auto& m : records) {
    auto& t = out[m.release_year];
    ++t.movies;
    t.budget += m.budget.dollars();
    t.revenue += m.revenue.dollars();
  }
  return out;
}

/// Counts per fixed-width bucket [k*width, (k+1)*width); the last bucket holds
/// everything at or beyond buckets*width.
inline std::vector<std::size_t> histogram(std::span<const double> xs, double width, std::size_t buckets) {
  if (!(width > 0.0) || buckets == 0) throw DomainError("histogram: bad bucket layout");
  std::vector<std::size_t> counts(buckets + 1, 0);
  for (const double x : xs) {
    const double k = x / width;
    const auto slot = k < 0.0 ? 0 : (k >= static_cast<double>(buckets) ? buckets : static_cast<std::size_t>(k));
    ++counts[slot];
  }
  return counts;
}

/// Movies per genre; a movie counts once in each of its genres.
inline std::map<std::string, std::size_t> genre_counts(std::span<const ingest::MovieRecord> records) {
  std::map<std::string, std::size_t> out;
  for (const auto& m : records) {
    for (const auto& g : m.genres) ++out[g];
  }
  return out;
}

/// Mean revenue of a genre's movies per release year.
inline std::map<int, double> genre_yearly_mean_revenue(std::span<const ingest::MovieRecord> records,
                                                       const std::string& genre) {
  std::map<int, std::pair<double, std::size_t>> acc;
  for (const auto& m : records) {
    for (const auto& g : m.genres) {
      if (g == genre) {
        auto& [sum, n] = acc[m.release_year];
        sum += m.revenue.dollars();
        ++n;
        break;
      }
    }
  }
  std::map<int, double> out;
  for (const auto& [year, sn] : acc) out[year] = sn.first / static_cast<double>(sn.second);
  return out;
}

}  // namespace boxoffice::stats

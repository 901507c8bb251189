#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "boxoffice/ingest/record.hpp"
#include "boxoffice/stats/content_rating.hpp"

namespace boxoffice::ingest {

/// Inclusive release-year window applied during cleaning.
struct YearFilter {
  std::optional<int> from;
  std::optional<int> to;

  bool admits(int year) const { return (!from || year >= *from) && (!to || year <= *to); }
};

struct CleanReport {
  std::size_t kept = 0;
  /// Each dropped record is counted once, under the first failing field.
  std::map<std::string, std::size_t> dropped_by_missing_field;

  std::size_t dropped() const {
    std::size_t n = 0;
    for (const auto& [field, count] : dropped_by_missing_field) n += count;
    return n;
  }
};

/// Fields checked by clean(), in checking order. "year_filter" counts records
/// that were complete but fell outside the requested window.
inline constexpr std::array<std::string_view, 13> kCleanFields = {
    "release_year", "release_month", "budget",    "revenue",     "runtime",
    "content_rating", "genres",      "cast",      "directors",   "creators",
    "imdb_rating",  "rater_count",   "year_filter"};

namespace detail {

/// Name of the first field that disqualifies `m`, or nullopt when it is usable.
inline std::optional<std::string_view> first_missing(const RawMovie& m) {
  auto nonempty = [](const auto& list) { return list.has_value() && !list->empty(); };
  if (!m.release_year) return "release_year";
  if (!m.release_month || *m.release_month < 1 || *m.release_month > 12) return "release_month";
  if (!m.budget || m.budget->cents() <= 0) return "budget";
  if (!m.revenue || m.revenue->cents() < 0) return "revenue";
  if (!m.runtime || *m.runtime <= 0) return "runtime";
  if (!m.content_rating || !stats::is_known_content_rating(*m.content_rating)) return "content_rating";
  if (!nonempty(m.genres)) return "genres";
  if (!nonempty(m.cast)) return "cast";
  if (!nonempty(m.directors)) return "directors";
  if (!nonempty(m.creators)) return "creators";
  if (!m.imdb_rating || !(*m.imdb_rating >= 1.0 && *m.imdb_rating <= 10.0)) return "imdb_rating";
  if (!m.rater_count || *m.rater_count < 0) return "rater_count";
  return std::nullopt;
}

}  // namespace detail

/// Drops every record lacking an analysed attribute. Nothing is imputed.
inline std::pair<std::vector<MovieRecord>, CleanReport> clean(const std::vector<RawMovie>& records,
                                                               const YearFilter& years = {}) {
  CleanReport report;
  for (const auto field : kCleanFields) report.dropped_by_missing_field[std::string(field)] = 0;

  std::vector<MovieRecord> kept;
  kept.reserve(records.size());
  for (const auto& raw : records) {
    if (const auto field = detail::first_missing(raw)) {
      ++report.dropped_by_missing_field[std::string(*field)];
      continue;
    }
    if (!years.admits(*raw.release_year)) {
      ++report.dropped_by_missing_field["year_filter"];
      continue;
    }
    kept.push_back(MovieRecord{raw.id,
                               raw.title,
                               *raw.release_year,
                               *raw.release_month,
                               *raw.budget,
                               *raw.revenue,
                               *raw.runtime,
                               *raw.content_rating,
                               *raw.genres,
                               *raw.cast,
                               *raw.directors,
                               *raw.creators,
                               raw.production_companies.value_or(std::vector<std::string>{}),
                               *raw.imdb_rating,
                               *raw.rater_count});
  }
  report.kept = kept.size();
  return {std::move(kept), std::move(report)};
}

inline nlohmann::json to_json(const CleanReport& report) {
  return {{"kept", report.kept},
          {"dropped", report.dropped()},
          {"dropped_by_missing_field", report.dropped_by_missing_field}};
}

}  // namespace boxoffice::ingest

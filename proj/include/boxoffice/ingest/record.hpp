#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxoffice/money.hpp"

namespace boxoffice::ingest {

/// A cleaned movie: every analysed attribute is present and valid.
struct MovieRecord {
  std::string id;
  std::string title;
  int release_year = 0;
  int release_month = 1;
  Money budget;
  Money revenue;
  int runtime = 0;
  std::string content_rating;
  std::vector<std::string> genres;
  std::vector<std::string> cast;
  std::vector<std::string> directors;
  std::vector<std::string> creators;
  std::vector<std::string> production_companies;
  double imdb_rating = 0.0;
  std::int64_t rater_count = 0;

  bool operator==(const MovieRecord&) const = default;
};

/// A record as loaded from disk. Absent values (JSON null, or not part of the
/// source schema) are empty optionals; nothing has been validated yet.
struct RawMovie {
  std::string id;
  std::string title;
  std::optional<int> release_year;
  std::optional<int> release_month;
  std::optional<Money> budget;
  std::optional<Money> revenue;
  std::optional<int> runtime;
  std::optional<std::string> content_rating;
  std::optional<std::vector<std::string>> genres;
  std::optional<std::vector<std::string>> cast;
  std::optional<std::vector<std::string>> directors;
  std::optional<std::vector<std::string>> creators;
  std::optional<std::vector<std::string>> production_companies;
  std::optional<double> imdb_rating;
  std::optional<std::int64_t> rater_count;

  bool operator==(const RawMovie&) const = default;
};

inline RawMovie to_raw(const MovieRecord& m) {
  return RawMovie{m.id,        m.title,          m.release_year, m.release_month,
                  m.budget,    m.revenue,        m.runtime,      m.content_rating,
                  m.genres,    m.cast,           m.directors,    m.creators,
                  m.production_companies, m.imdb_rating, m.rater_count};
}

inline std::vector<RawMovie> to_raw(const std::vector<MovieRecord>& records) {
  std::vector<RawMovie> out;
  out.reserve(records.size());
  for (const auto& m : records) out.push_back(to_raw(m));
  return out;
}

}  // namespace boxoffice::ingest

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "boxoffice/features/history.hpp"
#include "boxoffice/ingest/record.hpp"

namespace boxoffice::features {

/// Six aggregates of a filmography. All zero when it is empty.
struct PowerSlot {
  double n_movies = 0.0;
  double total_revenue = 0.0;
  double avg_revenue = 0.0;
  double total_raters = 0.0;
  double avg_raters = 0.0;
  double avg_rating = 0.0;

  static constexpr std::size_t kWidth = 6;

  std::array<double, kWidth> values() const {
    return {n_movies, total_revenue, avg_revenue, total_raters, avg_raters, avg_rating};
  }

  bool operator==(const PowerSlot&) const = default;
};

inline PowerSlot aggregate(std::span<const Credit> credits) {
  PowerSlot slot;
  if (credits.empty()) return slot;
  double rating_sum = 0.0;
  for (const auto& c : credits) {
    slot.total_revenue += c.revenue;
    slot.total_raters += c.raters;
    rating_sum += c.rating;
  }
  slot.n_movies = static_cast<double>(credits.size());
  slot.avg_revenue = slot.total_revenue / slot.n_movies;
  slot.avg_raters = slot.total_raters / slot.n_movies;
  slot.avg_rating = rating_sum / slot.n_movies;
  return slot;
}

/// Filmography of `entity` strictly before `cutoff_year`.
inline PowerSlot entity_power(const std::string& entity, EntityKind kind, int cutoff_year,
                              const HistoryIndex& index) {
  return aggregate(index.before(kind, entity, cutoff_year));
}

/// Slots filled from the first `slots` credited names in listed order, zero padded.
inline std::vector<double> entity_block(const ingest::MovieRecord& movie, EntityKind kind, std::size_t slots,
                                        const HistoryIndex& index) {
  std::vector<double> out(slots * PowerSlot::kWidth, 0.0);
  const auto& names = credited(movie, kind);
  for (std::size_t s = 0; s < slots && s < names.size(); ++s) {
    const auto v = entity_power(names[s], kind, movie.release_year, index).values();
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(s * PowerSlot::kWidth));
  }
  return out;
}

inline constexpr int kGenreWindowYears = 5;
inline constexpr std::size_t kGenreSlots = 5;

/// Per listed genre (up to five), aggregates over releases in the five years
/// before the movie's year.
inline std::vector<double> genre_power(const ingest::MovieRecord& movie, const HistoryIndex& index) {
  std::vector<double> out(kGenreSlots * PowerSlot::kWidth, 0.0);
  for (std::size_t s = 0; s < kGenreSlots && s < movie.genres.size(); ++s) {
    const auto credits =
        index.between(EntityKind::Genre, movie.genres[s], movie.release_year - kGenreWindowYears, movie.release_year);
    const auto v = aggregate(credits).values();
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(s * PowerSlot::kWidth));
  }
  return out;
}

}  // namespace boxoffice::features

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "boxoffice/error.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/rng.hpp"
#include "boxoffice/stats/content_rating.hpp"

namespace boxoffice::ingest {

enum class RevenueLaw {
  /// Revenue is a strictly increasing function of budget times lognormal noise.
  /// The curve sends each budget decile of [min_budget, max_budget] onto one
  /// default revenue class, so the class is a function of the budget decile.
  BudgetMonotone,
  /// Revenue drawn independently of every other attribute.
  Independent,
};

struct SyntheticConfig {
  std::size_t n_movies = 1000;
  std::size_t n_actors = 400;
  int year_from = 1980;
  int year_to = 2019;
  RevenueLaw revenue_law = RevenueLaw::BudgetMonotone;
  /// Standard deviation of the log-revenue noise.
  double noise = 0.02;
  double min_budget = 1e6;
  double max_budget = 2e8;
};

namespace detail {

inline constexpr std::array<std::string_view, 23> kSyntheticGenres = {
    "Action",  "Adventure", "Animation", "Biography", "Comedy",  "Crime",   "Documentary", "Drama",
    "Family",  "Fantasy",   "Film-Noir", "History",   "Horror",  "Music",   "Musical",     "Mystery",
    "News",    "Romance",   "Sci-Fi",    "Sport",     "Thriller", "War",    "Western"};

// Revenue (USD) at budget quantile k/10, k = 0..10. Interior knots sit on the
// default class boundaries.
inline constexpr std::array<double, 11> kRevenueKnots = {2e5,   1e6,   10e6,  20e6,  40e6, 65e6,
                                                         100e6, 150e6, 225e6, 350e6, 600e6};

inline double monotone_revenue(double quantile) {
  const double q = std::clamp(quantile, 0.0, 1.0) * 10.0;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(q), 9);
  const double t = q - static_cast<double>(k);
  return std::exp(std::log(kRevenueKnots[k]) * (1.0 - t) + std::log(kRevenueKnots[k + 1]) * t);
}

// Popular names are drawn more often, so careers and co-appearances build up.
inline std::vector<std::string> draw_names(Rng& rng, std::string_view prefix, std::size_t pool,
                                           std::size_t count) {
  count = std::min(count, pool);
  std::vector<std::size_t> picked;
  while (picked.size() < count) {
    const double u = rng.uniform();
    const auto idx = std::min(pool - 1, static_cast<std::size_t>(static_cast<double>(pool) * u * u));
    if (std::find(picked.begin(), picked.end(), idx) == picked.end()) picked.push_back(idx);
  }
  std::vector<std::string> names;
  names.reserve(picked.size());
  for (const auto idx : picked) names.push_back(std::string(prefix) + " " + std::to_string(idx));
  return names;
}

}  // namespace detail

/// Deterministic movie table for tests and demos. Every record satisfies the
/// cleaned-record invariants; money is already in reference-year dollars.
inline std::vector<MovieRecord> generate_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
  if (config.year_from > config.year_to) throw DomainError("generate_synthetic: empty year range");
  if (config.n_movies > 0 && config.n_actors == 0) throw DomainError("generate_synthetic: no actors");

  Rng rng(seed);
  const std::size_t n_directors = std::max<std::size_t>(1, config.n_actors / 4);
  const std::size_t n_creators = std::max<std::size_t>(1, config.n_actors / 3);
  const std::size_t n_companies = std::max<std::size_t>(3, config.n_actors / 10);
  const auto years = static_cast<std::uint64_t>(config.year_to - config.year_from + 1);

  std::vector<MovieRecord> out;
  out.reserve(config.n_movies);
  for (std::size_t i = 0; i < config.n_movies; ++i) {
    MovieRecord m;
    m.id = "syn" + std::to_string(1000000 + i).substr(1);
    m.title = "Synthetic Movie " + std::to_string(i + 1);
    m.release_year = config.year_from + static_cast<int>(rng.below(years));
    m.release_month = 1 + static_cast<int>(rng.below(12));

    const double quantile = rng.uniform();
    m.budget = Money::from_dollars(config.min_budget + quantile * (config.max_budget - config.min_budget));
    const double noise = config.noise * rng.normal();
    double revenue = 0.0;
    switch (config.revenue_law) {
      case RevenueLaw::BudgetMonotone:
        revenue = detail::monotone_revenue(quantile) * std::exp(noise);
        break;
      case RevenueLaw::Independent:
        revenue = detail::monotone_revenue(rng.uniform()) * std::exp(noise);
        break;
    }
    m.revenue = Money::from_dollars(revenue);

    m.runtime = 80 + static_cast<int>(rng.below(100));
    const auto rating_pick = rng.below(100);
    m.content_rating = rating_pick < 30   ? "PG-13"
                       : rating_pick < 70 ? "R"
                       : rating_pick < 85 ? "PG"
                       : rating_pick < 90 ? "G"
                                          : std::string(stats::kContentRatingLabels[3 + rng.below(15)]);

    const auto n_genres = 1 + rng.below(3);
    while (m.genres.size() < n_genres) {
      std::string g(detail::kSyntheticGenres[rng.below(detail::kSyntheticGenres.size())]);
      if (std::find(m.genres.begin(), m.genres.end(), g) == m.genres.end()) m.genres.push_back(std::move(g));
    }
    m.cast = detail::draw_names(rng, "Actor", config.n_actors, 3 + rng.below(10));
    m.directors = detail::draw_names(rng, "Director", n_directors, 1 + rng.below(2));
    m.creators = detail::draw_names(rng, "Writer", n_creators, 1 + rng.below(3));
    m.production_companies = detail::draw_names(rng, "Studio", n_companies, 1 + rng.below(3));
    m.imdb_rating = std::round(rng.uniform(3.0, 9.0) * 10.0) / 10.0;
    m.rater_count = static_cast<std::int64_t>(std::round(revenue / 500.0 * std::exp(0.5 * rng.normal())));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace boxoffice::ingest

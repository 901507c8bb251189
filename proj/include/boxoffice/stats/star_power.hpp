#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "boxoffice/error.hpp"
#include "boxoffice/features/history.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/money.hpp"
#include "boxoffice/stats/descriptive.hpp"
#include "boxoffice/stats/ks.hpp"

namespace boxoffice::stats {

struct StarThresholds {
  std::size_t movies = 0;  // strictly more prior credits than this
  Money revenue;           // at least one prior movie grossing strictly more than this
};

/// Default thresholds for each role (actor, director, creator, production company).
inline StarThresholds default_star_thresholds(features::EntityKind role) {
  using namespace money_literals;
  switch (role) {
    case features::EntityKind::Actor: return {40, 1000_musd};
    case features::EntityKind::Director: return {5, 100_musd};
    case features::EntityKind::Creator: return {10, 400_musd};
    case features::EntityKind::Production: return {40, 1000_musd};
    case features::EntityKind::Genre: break;
  }
  throw DomainError("star thresholds are defined for people and companies only");
}

struct StarSplit {
  std::vector<double> star_revenues;
  std::vector<double> nostar_revenues;
  std::optional<TestResult> ks;            // absent when either side is empty
  std::optional<double> mean_difference;   // star mean minus no-star mean
};

/// Whether any entity credited in `role` qualifies as a star before the movie's year.
inline bool has_star(const ingest::MovieRecord& m, features::EntityKind role, const StarThresholds& th,
                     const features::HistoryIndex& index) {
  for (const auto& name : features::credited(m, role)) {
    const auto prior = index.before(role, name, m.release_year);
    if (prior.size() > th.movies) return true;
    const double limit = th.revenue.dollars();
    for (const auto& c : prior) {
      if (c.revenue > limit) return true;
    }
  }
  return false;
}

inline StarSplit star_split(std::span<const ingest::MovieRecord> records, features::EntityKind role,
                            const StarThresholds& th, const features::HistoryIndex& index) {
  if (role == features::EntityKind::Genre) throw DomainError("star_split: genre is not a star role");
  bool any_listed = false;
  for (const auto& m : records) any_listed = any_listed || !features::credited(m, role).empty();
  if (!any_listed) {
    throw DomainError("star_split: no record lists any " + std::string(features::entity_kind_name(role)));
  }

  StarSplit out;
  for (const auto& m : records) {
    (has_star(m, role, th, index) ? out.star_revenues : out.nostar_revenues).push_back(m.revenue.dollars());
  }
  if (!out.star_revenues.empty() && !out.nostar_revenues.empty()) {
    out.ks = ks_two_sample(out.star_revenues, out.nostar_revenues);
    out.mean_difference = mean(out.star_revenues) - mean(out.nostar_revenues);
  }
  return out;
}

}  // namespace boxoffice::stats

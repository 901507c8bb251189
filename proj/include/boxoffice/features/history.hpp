#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "boxoffice/ingest/cpi.hpp"
#include "boxoffice/ingest/record.hpp"

namespace boxoffice::features {

enum class EntityKind : int { Actor = 0, Director, Creator, Production, Genre };

inline constexpr std::size_t kEntityKindCount = 5;

inline std::string_view entity_kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::Actor: return "actor";
    case EntityKind::Director: return "director";
    case EntityKind::Creator: return "creator";
    case EntityKind::Production: return "production";
    case EntityKind::Genre: return "genre";
  }
  return "?";
}

/// Names a record credits under `kind`, in listed order.
inline const std::vector<std::string>& credited(const ingest::MovieRecord& m, EntityKind kind) {
  switch (kind) {
    case EntityKind::Actor: return m.cast;
    case EntityKind::Director: return m.directors;
    case EntityKind::Creator: return m.creators;
    case EntityKind::Production: return m.production_companies;
    case EntityKind::Genre: return m.genres;
  }
  return m.cast;
}

/// One movie in an entity's filmography.
struct Credit {
  int year = 0;
  std::string movie_id;
  double revenue = 0.0;  // dollars
  double raters = 0.0;
  double rating = 0.0;

  auto order_key() const { return std::tie(year, movie_id); }
};

/// Money basis for the revenues stored in credits.
enum class RevenueBasis { Adjusted, Nominal };

/// Per-entity filmographies sorted by (year, movie id). Immutable once built;
/// answers do not depend on the order of the source records.
class HistoryIndex {
 public:
  HistoryIndex() = default;

  /// Nominal revenues are recovered by deflating reference-year dollars with `cpi`.
  static HistoryIndex build(std::span<const ingest::MovieRecord> records,
                            RevenueBasis basis = RevenueBasis::Adjusted,
                            const ingest::CpiTable* cpi = nullptr) {
    if (basis == RevenueBasis::Nominal && cpi == nullptr) {
      throw DomainError("HistoryIndex: nominal revenue basis needs a CPI table");
    }
    HistoryIndex index;
    for (const auto& m : records) {
      const Money revenue =
          basis == RevenueBasis::Adjusted ? m.revenue : ingest::deflate(m.revenue, m.release_year, *cpi);
      const Credit credit{m.release_year, m.id, revenue.dollars(), static_cast<double>(m.rater_count),
                          m.imdb_rating};
      for (std::size_t k = 0; k < kEntityKindCount; ++k) {
        const auto kind = static_cast<EntityKind>(k);
        const auto& names = credited(m, kind);
        for (std::size_t i = 0; i < names.size(); ++i) {
          // A name listed twice on one movie is one credit.
          if (std::find(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i), names[i]) !=
              names.begin() + static_cast<std::ptrdiff_t>(i)) {
            continue;
          }
          index.tables_[k][names[i]].push_back(credit);
        }
      }
    }
    for (auto& table : index.tables_) {
      for (auto& [name, credits] : table) {
        std::sort(credits.begin(), credits.end(),
                  [](const Credit& a, const Credit& b) { return a.order_key() < b.order_key(); });
      }
    }
    return index;
  }

  std::span<const Credit> credits(EntityKind kind, const std::string& name) const {
    const auto& table = tables_[static_cast<std::size_t>(kind)];
    const auto it = table.find(name);
    if (it == table.end()) return {};
    return it->second;
  }

  /// Credits with from_year <= year < to_year.
  std::span<const Credit> between(EntityKind kind, const std::string& name, int from_year, int to_year) const {
    const auto all = credits(kind, name);
    const auto lo = std::lower_bound(all.begin(), all.end(), from_year,
                                     [](const Credit& c, int y) { return c.year < y; });
    const auto hi = std::lower_bound(lo, all.end(), to_year, [](const Credit& c, int y) { return c.year < y; });
    return {lo, hi};
  }

  /// Credits released strictly before `cutoff_year`.
  std::span<const Credit> before(EntityKind kind, const std::string& name, int cutoff_year) const {
    const auto all = credits(kind, name);
    const auto hi = std::lower_bound(all.begin(), all.end(), cutoff_year,
                                     [](const Credit& c, int y) { return c.year < y; });
    return {all.begin(), hi};
  }

  std::size_t entity_count(EntityKind kind) const { return tables_[static_cast<std::size_t>(kind)].size(); }

  bool empty() const {
    return std::all_of(tables_.begin(), tables_.end(), [](const auto& t) { return t.empty(); });
  }

 private:
  std::array<std::unordered_map<std::string, std::vector<Credit>>, kEntityKindCount> tables_;
};

}  // namespace boxoffice::features

#pragma once

#include <array>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "boxoffice/features/history.hpp"
#include "boxoffice/ingest/cpi.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/pipeline/csv.hpp"
#include "boxoffice/stats/aggregate.hpp"
#include "boxoffice/stats/content_rating.hpp"
#include "boxoffice/stats/correlation.hpp"
#include "boxoffice/stats/descriptive.hpp"
#include "boxoffice/stats/ks.hpp"
#include "boxoffice/stats/regression.hpp"
#include "boxoffice/stats/star_power.hpp"

namespace boxoffice::pipeline {

struct AnalyzeOptions {
  /// Keep movies listing both genres of the genre KS pair in both samples.
  bool include_dual_genre = true;
  std::string genre_a = "Sci-Fi";
  std::string genre_b = "Family";
  int rolling_window = 5;
  int runtime_degree = 6;
  double histogram_width = 50e6;
  std::size_t histogram_buckets = 10;
  features::RevenueBasis basis = features::RevenueBasis::Adjusted;
  const ingest::CpiTable* cpi = nullptr;
  std::map<features::EntityKind, stats::StarThresholds> star_thresholds;  // overrides the defaults
};

struct AnalyzeOutput {
  nlohmann::json report;
  std::map<std::string, std::string> csv;  // file name -> contents
};

namespace detail {

/// Runs one report entry; failures become "skipped: <reason>".
inline nlohmann::json guarded(const std::function<nlohmann::json()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return "skipped: " + std::string(e.what());
  }
}

inline std::vector<double> column(std::span<const ingest::MovieRecord> records,
                                  const std::function<double(const ingest::MovieRecord&)>& get) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& m : records) out.push_back(get(m));
  return out;
}

/// Spearman on the raw values plus OLS on the min-max scaled pair.
inline nlohmann::json association(std::span<const double> xs, std::span<const double> ys) {
  nlohmann::json out;
  out["spearman"] = guarded([&] { return stats::to_json(stats::spearman(xs, ys)); });
  out["ols_scaled"] = guarded([&] {
    const auto sx = stats::min_max_scale(xs);
    const auto sy = stats::min_max_scale(ys);
    const auto fit = stats::ols_fit(sx.values, sy.values);
    auto j = stats::to_json(fit);
    j["slope"] = fit.slope();
    j["intercept"] = fit.intercept();
    return j;
  });
  return out;
}

inline std::string matrix_csv(const stats::PValueMatrix& m) {
  std::ostringstream out;
  out << "label";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (const double p : m.p[i]) out << ',' << format_double(p);
    out << '\n';
  }
  return out.str();
}

inline bool has_genre(const ingest::MovieRecord& m, const std::string& g) {
  for (const auto& x : m.genres) {
    if (x == g) return true;
  }
  return false;
}

}  // namespace detail

/// The full association battery over cleaned, inflation-adjusted records.
inline AnalyzeOutput analyze(std::span<const ingest::MovieRecord> records, const AnalyzeOptions& options = {}) {
  using detail::guarded;
  AnalyzeOutput out;
  auto& report = out.report;
  report["movies"] = records.size();

  const auto budget = detail::column(records, [](const auto& m) { return m.budget.dollars(); });
  const auto revenue = detail::column(records, [](const auto& m) { return m.revenue.dollars(); });
  const auto runtime = detail::column(records, [](const auto& m) { return static_cast<double>(m.runtime); });
  const auto rating = detail::column(records, [](const auto& m) { return m.imdb_rating; });
  const auto raters = detail::column(records, [](const auto& m) { return static_cast<double>(m.rater_count); });

  report["revenue_mean"] = guarded([&] { return nlohmann::json(stats::mean(revenue)); });
  report["budget_revenue"] = detail::association(budget, revenue);
  report["rating_revenue"] = detail::association(rating, revenue);
  report["raters_revenue"] = detail::association(raters, revenue);
  report["runtime_revenue"] = {
      {"spearman", guarded([&] { return stats::to_json(stats::spearman(runtime, revenue)); })},
      {"polynomial", guarded([&] { return stats::to_json(stats::poly_fit(runtime, revenue, options.runtime_degree)); })}};

  {
    std::ostringstream csv;
    csv << "year,movies,total_budget,total_revenue\n";
    for (const auto& [year, t] : stats::year_totals(records)) {
      csv << year << ',' << t.movies << ',' << format_double(t.budget) << ',' << format_double(t.revenue) << '\n';
    }
    out.csv["year_totals.csv"] = csv.str();
  }
  {
    const auto hb = stats::histogram(budget, options.histogram_width, options.histogram_buckets);
    const auto hr = stats::histogram(revenue, options.histogram_width, options.histogram_buckets);
    std::ostringstream csv;
    csv << "bucket_start,budget_count,revenue_count\n";
    for (std::size_t k = 0; k < hb.size(); ++k) {
      csv << format_double(static_cast<double>(k) * options.histogram_width) << ',' << hb[k] << ',' << hr[k] << '\n';
    }
    out.csv["budget_revenue_histogram.csv"] = csv.str();
  }

  const auto months = stats::month_stats(records);
  {
    nlohmann::json j = nlohmann::json::array();
    std::ostringstream csv;
    csv << "month,count,mean_revenue\n";
    for (std::size_t i = 0; i < months.size(); ++i) {
      const auto& s = months[i];
      j.push_back({{"month", i + 1}, {"count", s.count},
                   {"mean_revenue", s.mean_revenue ? nlohmann::json(*s.mean_revenue) : nlohmann::json()}});
      csv << i + 1 << ',' << s.count << ',' << (s.mean_revenue ? format_double(*s.mean_revenue) : "") << '\n';
    }
    report["month_stats"] = std::move(j);
    out.csv["month_stats.csv"] = csv.str();
  }

  // Content ratings: raw labels, PG-13 vs R, then the four clusters.
  {
    std::map<std::string, std::vector<double>> by_label;
    std::array<std::vector<double>, stats::kRatingClusterCount> by_cluster;
    for (const auto& m : records) {
      by_label[m.content_rating].push_back(m.revenue.dollars());
      by_cluster[static_cast<std::size_t>(stats::cluster_content_rating(m.content_rating))].push_back(m.revenue.dollars());
    }
    nlohmann::json j;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto label : stats::kContentRatingLabels) {
      const auto it = by_label.find(std::string(label));
      counts[std::string(label)] = it == by_label.end() ? 0 : it->second.size();
    }
    j["counts"] = std::move(counts);
    j["ks_pg13_r"] = guarded([&] { return stats::to_json(stats::ks_two_sample(by_label["PG-13"], by_label["R"])); });
    j["pairwise"] = guarded([&] {
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      for (const auto label : stats::kContentRatingLabels) {
        const auto it = by_label.find(std::string(label));
        if (it != by_label.end() && !it->second.empty()) groups.emplace_back(it->first, it->second);
      }
      const auto m = stats::pairwise_ks_matrix(groups);
      out.csv["ks_content_rating.csv"] = detail::matrix_csv(m);
      return stats::to_json(m);
    });
    j["pairwise_clustered"] = guarded([&] {
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      for (std::size_t c = 0; c < by_cluster.size(); ++c) {
        if (!by_cluster[c].empty()) {
          groups.emplace_back(std::string(stats::cluster_name(static_cast<stats::RatingCluster>(c))), by_cluster[c]);
        }
      }
      const auto m = stats::pairwise_ks_matrix(groups);
      out.csv["ks_content_rating_clustered.csv"] = detail::matrix_csv(m);
      return stats::to_json(m);
    });
    report["content_rating"] = std::move(j);
  }

  // Genres.
  {
    nlohmann::json j;
    const auto counts = stats::genre_counts(records);
    j["counts"] = counts;
    std::ostringstream counts_csv;
    counts_csv << "genre,movies\n";
    for (const auto& [g, n] : counts) counts_csv << g << ',' << n << '\n';
    out.csv["genre_counts.csv"] = counts_csv.str();

    std::ostringstream rolling_csv;
    rolling_csv << "genre,year,rolling_mean_revenue\n";
    for (const auto& [g, n] : counts) {
      for (const auto& [year, v] : stats::rolling_average(stats::genre_yearly_mean_revenue(records, g),
                                                          options.rolling_window)) {
        rolling_csv << g << ',' << year << ',' << format_double(v) << '\n';
      }
    }
    out.csv["genre_rolling.csv"] = rolling_csv.str();
    j["rolling_window"] = options.rolling_window;

    j["ks_pair"] = guarded([&] {
      std::vector<double> a;
      std::vector<double> b;
      std::size_t both = 0;
      for (const auto& m : records) {
        const bool in_a = detail::has_genre(m, options.genre_a);
        const bool in_b = detail::has_genre(m, options.genre_b);
        both += in_a && in_b ? 1 : 0;
        if (in_a && in_b && !options.include_dual_genre) continue;
        if (in_a) a.push_back(m.revenue.dollars());
        if (in_b) b.push_back(m.revenue.dollars());
      }
      auto r = stats::to_json(stats::ks_two_sample(a, b));
      r["genres"] = {options.genre_a, options.genre_b};
      r["sizes"] = {a.size(), b.size()};
      r["movies_with_both"] = both;
      r["include_dual_genre"] = options.include_dual_genre;
      return r;
    });
    j["pairwise"] = guarded([&] {
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      for (const auto& [g, n] : counts) {
        std::vector<double> values;
        for (const auto& m : records) {
          if (detail::has_genre(m, g)) values.push_back(m.revenue.dollars());
        }
        groups.emplace_back(g, std::move(values));
      }
      const auto m = stats::pairwise_ks_matrix(groups);
      out.csv["ks_genre.csv"] = detail::matrix_csv(m);
      return stats::to_json(m);
    });
    report["genre"] = std::move(j);
  }

  // Star power, evaluated against a history of the same records.
  {
    const auto index = features::HistoryIndex::build(records, options.basis, options.cpi);
    nlohmann::json j;
    for (const auto role : {features::EntityKind::Actor, features::EntityKind::Director, features::EntityKind::Creator,
                            features::EntityKind::Production}) {
      j[std::string(features::entity_kind_name(role))] = guarded([&] {
        const auto it = options.star_thresholds.find(role);
        const auto th = it != options.star_thresholds.end() ? it->second : stats::default_star_thresholds(role);
        const auto split = stats::star_split(records, role, th, index);
        nlohmann::json r{{"threshold_movies", th.movies},
                         {"threshold_revenue", th.revenue.dollars()},
                         {"star_movies", split.star_revenues.size()},
                         {"nostar_movies", split.nostar_revenues.size()}};
        r["ks"] = split.ks ? stats::to_json(*split.ks) : nlohmann::json("skipped: one side is empty");
        r["mean_difference"] = split.mean_difference ? nlohmann::json(*split.mean_difference) : nlohmann::json();
        return r;
      });
    }
    report["star_power"] = std::move(j);
  }
  return out;
}

}  // namespace boxoffice::pipeline

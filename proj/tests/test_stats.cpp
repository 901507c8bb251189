#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "boxoffice/features/history.hpp"
#include "boxoffice/ingest/synthetic.hpp"
#include "boxoffice/rng.hpp"
#include "boxoffice/stats/aggregate.hpp"
#include "boxoffice/stats/content_rating.hpp"
#include "boxoffice/stats/correlation.hpp"
#include "boxoffice/stats/descriptive.hpp"
#include "boxoffice/stats/ks.hpp"
#include "boxoffice/stats/regression.hpp"
#include "boxoffice/stats/star_power.hpp"
#include "oracles.hpp"

using namespace boxoffice;
using namespace boxoffice::stats;
using namespace boxoffice::money_literals;

namespace {

std::vector<double> random_distinct(Rng& rng, std::size_t n) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.uniform(-100.0, 100.0);
  return xs;
}

ingest::MovieRecord movie(const std::string& id, int year, int month, double revenue,
                          std::vector<std::string> cast = {"A"}) {
  ingest::MovieRecord m;
  m.id = id;
  m.release_year = year;
  m.release_month = month;
  m.budget = Money::from_dollars(1e6);
  m.revenue = Money::from_dollars(revenue);
  m.runtime = 100;
  m.content_rating = "PG";
  m.genres = {"Drama"};
  m.cast = std::move(cast);
  m.directors = {"D"};
  m.creators = {"W"};
  m.imdb_rating = 5.0;
  return m;
}

}  // namespace

TEST(MinMaxScale, Examples) {
  EXPECT_EQ(min_max_scale(std::vector<double>{0, 5, 10}).values, (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(min_max_scale(std::vector<double>{7, 7, 7}).values, (std::vector<double>{0, 0, 0}));
  const auto s = min_max_scale(std::vector<double>{2, 4, 8});
  EXPECT_DOUBLE_EQ(s.values[1], 1.0 / 3.0);
  EXPECT_EQ(s.min, 2.0);
  EXPECT_EQ(s.max, 8.0);
  EXPECT_THROW(min_max_scale(std::vector<double>{}), DomainError);
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{10, 20, 30, 40}).statistic, 1.0);
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{4, 3, 2, 1}).statistic, -1.0);
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{2, 1, 4, 3, 5}).statistic, 0.8, 1e-12);
}

TEST(Spearman, Errors) {
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), UndefinedCorrelationError);
}

TEST(Spearman, TiesGetAverageRanks) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
  // Pearson of ranks (1, 2.5, 2.5, 4) against (1, 2, 3, 4).
  const double r = spearman(std::vector<double>{10, 20, 20, 30}, std::vector<double>{1, 2, 3, 4}).statistic;
  EXPECT_NEAR(r, 4.5 / std::sqrt(4.5 * 5.0), 1e-12);
}

TEST(Spearman, PValueMatchesTDistribution) {
  // r = 0.8, n = 5: t = 0.8 sqrt(3 / 0.36) = 2.3094; two-sided p = 0.1041.
  const auto r = spearman(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{2, 1, 4, 3, 5});
  EXPECT_NEAR(r.p_value, 0.104088, 1e-5);
  EXPECT_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}).p_value, 0.0);
}

TEST(Spearman, OracleAndInvariances) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const auto n = 3 + rng.below(60);
    const auto xs = random_distinct(rng, n);
    const auto ys = random_distinct(rng, n);
    const double rho = spearman(xs, ys).statistic;
    EXPECT_NEAR(rho, oracle::spearman_tie_free(xs, ys), 1e-9);
    EXPECT_DOUBLE_EQ(rho, spearman(ys, xs).statistic);
    std::vector<double> cubed;
    for (const double x : xs) cubed.push_back(std::exp(x / 50.0) + x * x * x);
    EXPECT_NEAR(rho, spearman(cubed, ys).statistic, 1e-12);
    const auto p = spearman(xs, ys).p_value;
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(KolmogorovSmirnov, Examples) {
  const std::vector<double> a{1, 2, 3, 4};
  EXPECT_EQ(ks_two_sample(a, a).statistic, 0.0);
  EXPECT_EQ(ks_two_sample(a, std::vector<double>{10, 11}).statistic, 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample(a, std::vector<double>{3, 4, 5, 6}).statistic, 0.5);
  EXPECT_THROW(ks_two_sample(a, std::vector<double>{}), DomainError);
}

TEST(KolmogorovSmirnov, SurvivalFunctionReferenceValues) {
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.963945, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.0), 0.269999, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.36), 0.0494859, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(2.0), 0.000671, 1e-6);
  // Both series agree where they meet.
  EXPECT_NEAR(kolmogorov_survival(std::nextafter(1.0, 0.0)), kolmogorov_survival(1.0), 1e-9);
}

TEST(KolmogorovSmirnov, OracleAndInvariances) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> a(1 + rng.below(40));
    std::vector<double> b(1 + rng.below(40));
    for (auto& x : a) x = static_cast<double>(rng.below(30));  // ties on purpose
    for (auto& x : b) x = static_cast<double>(rng.below(30)) + 0.5 * static_cast<double>(rng.below(2));
    const auto r = ks_two_sample(a, b);
    EXPECT_NEAR(r.statistic, oracle::ks_exhaustive(a, b), 1e-12);
    const auto swapped = ks_two_sample(b, a);
    EXPECT_EQ(r.statistic, swapped.statistic);
    EXPECT_EQ(r.p_value, swapped.p_value);
    std::vector<double> ea;
    std::vector<double> eb;
    for (const double x : a) ea.push_back(std::exp(x / 7.0));
    for (const double x : b) eb.push_back(std::exp(x / 7.0));
    EXPECT_EQ(ks_two_sample(ea, eb).statistic, r.statistic);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(PairwiseKs, ShapeSymmetryDiagonal) {
  Rng rng(3);
  std::vector<std::pair<std::string, std::vector<double>>> groups;
  for (const char* name : {"a", "b", "c"}) {
    std::vector<double> v(20);
    for (auto& x : v) x = rng.normal();
    groups.emplace_back(name, v);
  }
  const auto m = pairwise_ks_matrix(groups);
  ASSERT_EQ(m.p.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(m.p[i].size(), 3u);
    EXPECT_EQ(m.p[i][i], 1.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m.p[i][j], m.p[j][i]);
  }
  groups[1].second = groups[0].second;
  EXPECT_NEAR(pairwise_ks_matrix(groups).p[0][1], 1.0, 1e-12);
  groups[2].second.clear();
  EXPECT_THROW(pairwise_ks_matrix(groups), DomainError);
  groups.resize(1);
  EXPECT_THROW(pairwise_ks_matrix(groups), DomainError);
}

TEST(OlsFit, Examples) {
  const std::vector<double> xs{0, 1, 2, 3};
  const auto identity = ols_fit(xs, xs);
  EXPECT_NEAR(identity.slope(), 1.0, 1e-15);
  EXPECT_NEAR(identity.intercept(), 0.0, 1e-15);
  const auto flat = ols_fit(xs, std::vector<double>{3, 3, 3, 3});
  EXPECT_EQ(flat.slope(), 0.0);
  EXPECT_EQ(flat.intercept(), 3.0);
  EXPECT_THROW(ols_fit(std::vector<double>{2, 2}, std::vector<double>{1, 3}), SingularFitError);
  EXPECT_THROW(ols_fit(std::vector<double>{2}, std::vector<double>{1}), DomainError);
}

TEST(OlsFit, OracleAndShift) {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto n = 2 + rng.below(100);
    const auto xs = random_distinct(rng, n);
    auto ys = random_distinct(rng, n);
    const auto fit = ols_fit(xs, ys);
    const auto ref = oracle::least_squares_line(xs, ys);
    EXPECT_NEAR(fit.slope(), ref.slope, 1e-9);
    EXPECT_NEAR(fit.intercept(), ref.intercept, 1e-9);
    for (auto& y : ys) y += 17.0;
    const auto shifted = ols_fit(xs, ys);
    EXPECT_NEAR(shifted.slope(), fit.slope(), 1e-12);
    EXPECT_NEAR(shifted.intercept(), fit.intercept() + 17.0, 1e-9);
  }
}

TEST(PolyFit, RecoversQuadraticAndMatchesOls) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = -5; i <= 5; ++i) {
    xs.push_back(i);
    ys.push_back(static_cast<double>(i * i));
  }
  const auto fit = poly_fit(xs, ys, 2);
  ASSERT_EQ(fit.coefficients.size(), 3u);
  EXPECT_NEAR(fit.coefficients[0], 0.0, 1e-9);
  EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-9);
  EXPECT_NEAR(fit.coefficients[2], 1.0, 1e-9);

  Rng rng(5);
  const auto rx = random_distinct(rng, 30);
  const auto ry = random_distinct(rng, 30);
  const auto line = poly_fit(rx, ry, 1);
  const auto ols = ols_fit(rx, ry);
  EXPECT_NEAR(line.slope(), ols.slope(), 1e-9);
  EXPECT_NEAR(line.intercept(), ols.intercept(), 1e-9);
  EXPECT_NEAR(line.residual_sum_squares, ols.residual_sum_squares, 1e-6);
}

TEST(PolyFit, RecoversRandomDegreeSix) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> coef(7);
    for (auto& c : coef) c = rng.uniform(-5.0, 5.0);
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 0; i < 40; ++i) {
      xs.push_back(rng.uniform(-2.0, 2.0));
      ys.push_back(oracle::polyval(coef, xs.back()));
    }
    const auto fit = poly_fit(xs, ys, 6);
    for (std::size_t k = 0; k < coef.size(); ++k) EXPECT_NEAR(fit.coefficients[k], coef[k], 1e-6);
  }
}

TEST(PolyFit, RssNonIncreasingInDegree) {
  Rng rng(7);
  const auto xs = random_distinct(rng, 50);
  const auto ys = random_distinct(rng, 50);
  double previous = INFINITY;
  for (int d = 1; d <= 6; ++d) {
    const double rss = poly_fit(xs, ys, d).residual_sum_squares;
    EXPECT_LE(rss, previous * (1 + 1e-12));
    previous = rss;
  }
  EXPECT_THROW(poly_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}, 3), SingularFitError);
  EXPECT_THROW(poly_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}, 0), DomainError);
}

TEST(RollingAverage, Examples) {
  const std::map<int, double> s{{2000, 10}, {2001, 20}, {2002, 30}};
  EXPECT_EQ(rolling_average(s, 1), s);
  EXPECT_EQ(rolling_average(s, 2), (std::map<int, double>{{2000, 10}, {2001, 15}, {2002, 25}}));
  const std::map<int, double> flat{{1990, 4}, {1993, 4}, {1994, 4}};
  for (const auto& [y, v] : rolling_average(flat, 3)) EXPECT_EQ(v, 4.0);
  EXPECT_FALSE(rolling_average(flat, 2).contains(1992));
  EXPECT_THROW(rolling_average(s, 0), DomainError);
}

TEST(ContentRating, Clusters) {
  EXPECT_EQ(cluster_content_rating("PG-13"), RatingCluster::PG);
  EXPECT_EQ(cluster_content_rating("G"), RatingCluster::G);
  EXPECT_EQ(cluster_content_rating("TV-14"), RatingCluster::TV);
  EXPECT_EQ(cluster_content_rating("NC-17"), RatingCluster::R);
  EXPECT_EQ(cluster_content_rating("Not Rated"), RatingCluster::TV);
  EXPECT_THROW(cluster_content_rating("PG-14"), UnknownRatingError);
  std::map<RatingCluster, int> sizes;
  for (const auto label : kContentRatingLabels) ++sizes[cluster_content_rating(label)];
  EXPECT_EQ(sizes.size(), 4u);
  EXPECT_EQ(sizes[RatingCluster::PG], 2);
  EXPECT_EQ(sizes[RatingCluster::R], 8);
  EXPECT_EQ(sizes[RatingCluster::TV], 7);
  EXPECT_EQ(sizes[RatingCluster::G], 1);
}

TEST(MonthStats, Examples) {
  const std::vector<ingest::MovieRecord> one{movie("a", 2000, 6, 5e6)};
  const auto s = month_stats(one);
  EXPECT_EQ(s[5].count, 1u);
  EXPECT_EQ(*s[5].mean_revenue, 5e6);
  for (std::size_t i = 0; i < 12; ++i) {
    if (i != 5) {
      EXPECT_EQ(s[i].count, 0u);
      EXPECT_FALSE(s[i].mean_revenue.has_value());
    }
  }
  const std::vector<ingest::MovieRecord> two{movie("a", 2000, 3, 10), movie("b", 2001, 3, 30)};
  EXPECT_EQ(*month_stats(two)[2].mean_revenue, 20.0);
}

TEST(Aggregates, HistogramYearTotalsGenres) {
  const auto h = histogram(std::vector<double>{0, 49.9, 50, 120, 1000}, 50, 3);
  EXPECT_EQ(h, (std::vector<std::size_t>{2, 1, 1, 1}));
  const std::vector<ingest::MovieRecord> rs{movie("a", 2000, 1, 10), movie("b", 2000, 2, 30), movie("c", 2002, 2, 5)};
  const auto totals = year_totals(rs);
  EXPECT_EQ(totals.at(2000).movies, 2u);
  EXPECT_EQ(totals.at(2000).revenue, 40.0);
  EXPECT_EQ(genre_counts(rs).at("Drama"), 3u);
  EXPECT_EQ(genre_yearly_mean_revenue(rs, "Drama").at(2000), 20.0);
}

TEST(StarSplit, StrictlyPriorCreditsAndOrThresholds) {
  std::vector<ingest::MovieRecord> rs{movie("a", 2000, 1, 2e9, {"Star"}), movie("b", 2001, 1, 1e6, {"Star"}),
                                      movie("c", 2001, 1, 3e6, {"Nobody"}), movie("d", 2000, 1, 4e6, {"Star"})};
  const auto index = features::HistoryIndex::build(rs);
  const auto split = star_split(rs, features::EntityKind::Actor, {40, 1000_musd}, index);
  // Only "b" sees Star's 2 billion 2000 credit; same-year "d" does not.
  EXPECT_EQ(split.star_revenues, (std::vector<double>{1e6}));
  EXPECT_EQ(split.nostar_revenues.size(), 3u);
  ASSERT_TRUE(split.mean_difference.has_value());
  EXPECT_DOUBLE_EQ(*split.mean_difference, 1e6 - (2e9 + 3e6 + 4e6) / 3.0);

  const auto by_count = star_split(rs, features::EntityKind::Actor, {1, 10000_musd}, index);
  EXPECT_EQ(by_count.star_revenues, (std::vector<double>{1e6}));  // "b": Star has 2 prior credits

  const auto degenerate = star_split(rs, features::EntityKind::Actor, {0, Money()}, index);
  EXPECT_EQ(degenerate.star_revenues, (std::vector<double>{1e6}));
}

TEST(StarSplit, NoPriorCreditsMeansNoStars) {
  const std::vector<ingest::MovieRecord> rs{movie("a", 2000, 1, 1e9, {"X"}), movie("b", 2000, 1, 1e9, {"Y"})};
  const auto index = features::HistoryIndex::build(rs);
  const auto split = star_split(rs, features::EntityKind::Director, {0, Money()}, index);
  EXPECT_TRUE(split.star_revenues.empty());
  EXPECT_FALSE(split.ks.has_value());
  EXPECT_THROW(star_split(rs, features::EntityKind::Production, {0, Money()}, index), DomainError);
}

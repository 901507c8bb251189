#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "boxoffice/classify/all_threshold.hpp"
#include "boxoffice/classify/buckets.hpp"
#include "boxoffice/classify/evaluate.hpp"
#include "boxoffice/classify/forest.hpp"
#include "boxoffice/classify/frank_hall.hpp"
#include "boxoffice/classify/knn.hpp"
#include "boxoffice/classify/logistic.hpp"
#include "boxoffice/classify/model_io.hpp"
#include "boxoffice/classify/ordinal.hpp"
#include "boxoffice/rng.hpp"

using namespace boxoffice;
using namespace boxoffice::classify;

namespace {

std::span<const double> row_of(const FeatureMatrix& x, Eigen::Index r) {
  return {x.row(r).data(), static_cast<std::size_t>(x.cols())};
}

FeatureMatrix random_matrix(Rng& rng, Eigen::Index n, Eigen::Index d) {
  FeatureMatrix x(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) x(r, c) = rng.uniform();
  }
  return x;
}

/// Labels 0..K-1 from equal-width bins of the first column.
std::vector<int> binned_labels(const FeatureMatrix& x, int k) {
  std::vector<int> y(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) y[static_cast<std::size_t>(r)] = std::min(k - 1, static_cast<int>(x(r, 0) * k));
  return y;
}

template <typename F>
void expect_gradient_matches(F objective, const Eigen::VectorXd& at) {
  Eigen::VectorXd grad;
  objective(at, &grad);
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::fabs(at(i)));
    Eigen::VectorXd up = at;
    Eigen::VectorXd down = at;
    up(i) += h;
    down(i) -= h;
    const double numeric = (objective(up, nullptr) - objective(down, nullptr)) / (2 * h);
    EXPECT_NEAR(grad(i), numeric, 1e-5 * std::max(1.0, std::fabs(numeric))) << "component " << i;
  }
}

}  // namespace

TEST(Bucketize, DefaultBoundaries) {
  const ClassBuckets b;
  EXPECT_EQ(b.num_classes(), 10);
  EXPECT_EQ(bucketize(Money::from_dollars(0.5e6), b), 0);
  EXPECT_EQ(bucketize(Money::from_dollars(10e6), b), 2);
  EXPECT_EQ(bucketize(Money::from_dollars(350e6), b), 9);
  EXPECT_THROW(bucketize(Money::from_cents(-1), b), DomainError);
  EXPECT_EQ(ClassBuckets::parse_millions("1,10,20").num_classes(), 4);
  EXPECT_THROW(ClassBuckets::parse_millions("10,1"), DomainError);
}

TEST(Balance, DownsamplesToSmallestClass) {
  const std::vector<std::size_t> counts{1608, 900, 800, 700, 650, 600, 550, 500, 417, 602};
  std::vector<int> labels;
  for (std::size_t k = 0; k < counts.size(); ++k) labels.insert(labels.end(), counts[k], static_cast<int>(k));
  Rng rng(2);
  shuffle(labels, rng);
  const auto picked = balance(labels, 10, 77);
  EXPECT_EQ(picked.size(), 4170u);
  std::vector<int> kept;
  for (const auto i : picked) kept.push_back(labels[i]);
  for (const auto c : class_counts(kept, 10)) EXPECT_EQ(c, 417u);
  EXPECT_EQ(balance(labels, 10, 77), picked);
  EXPECT_TRUE(std::is_sorted(picked.begin(), picked.end()));
  EXPECT_EQ(std::set<std::size_t>(picked.begin(), picked.end()).size(), picked.size());

  const std::vector<int> even{0, 1, 2, 0, 1, 2};
  auto all = balance(even, 3, 1);
  EXPECT_EQ(all, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(balance(even, 4, 1), EmptyClassError);
}

TEST(Split, CountsAndPartition) {
  const auto s = split(4170, 0.3, 5);
  EXPECT_EQ(s.test.size(), 1251u);
  EXPECT_EQ(s.train.size(), 2919u);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(4170);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  EXPECT_EQ(all, expected);
  const auto again = split(4170, 0.3, 5);
  EXPECT_EQ(again.test, s.test);
  EXPECT_THROW(split(10, 1.0, 5), DomainError);
}

TEST(Logistic, SeparableAndDegenerate) {
  FeatureMatrix x(2, 1);
  x << 0.0, 1.0;
  const std::vector<int> y{0, 1};
  LogisticRegression m;
  m.fit(x, y);
  EXPECT_GT(m.predict_probability(row_of(x, 1)), 0.5);
  EXPECT_LT(m.predict_probability(row_of(x, 0)), 0.5);

  const std::vector<int> ones{1, 1};
  LogisticRegression same;
  same.fit(x, ones);
  for (const double q : {-5.0, 0.0, 0.5, 1.0, 5.0}) EXPECT_GT(same.predict_probability(std::span<const double>(&q, 1)), 0.5);

  const std::vector<int> bad{0, 2};
  EXPECT_THROW(m.fit(x, bad), DomainError);
  FeatureMatrix nan(1, 1);
  nan << std::nan("");
  EXPECT_THROW(m.fit(nan, std::vector<int>{1}), DomainError);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  Rng rng(3);
  const auto x = random_matrix(rng, 40, 5);
  std::vector<int> y(40);
  for (auto& v : y) v = rng.uniform() < 0.4 ? 1 : 0;
  Eigen::VectorXd at(6);
  for (Eigen::Index i = 0; i < at.size(); ++i) at(i) = rng.uniform(-2.0, 2.0);
  expect_gradient_matches(
      [&](const Eigen::VectorXd& p, Eigen::VectorXd* g) { return LogisticRegression::objective(x, y, p, 1e-2, g); }, at);
}

TEST(Logistic, GradientDescentSolverLearns) {
  Rng rng(4);
  const auto x = random_matrix(rng, 200, 2);
  std::vector<int> y(200);
  for (Eigen::Index r = 0; r < x.rows(); ++r) y[static_cast<std::size_t>(r)] = x(r, 0) > 0.5 ? 1 : 0;
  LogisticOptions o;
  o.solver = LogisticSolver::GradientDescent;
  o.max_iter = 2000;
  o.learning_rate = 1.0;
  LogisticRegression m(o);
  m.fit(x, y);
  std::size_t correct = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    correct += (m.predict_probability(row_of(x, r)) > 0.5 ? 1 : 0) == y[static_cast<std::size_t>(r)] ? 1 : 0;
  }
  EXPECT_GE(correct, 180u);
}

TEST(RandomForest, ThresholdConcept) {
  Rng rng(5);
  const auto x = random_matrix(rng, 400, 3);
  std::vector<int> y(400);
  for (Eigen::Index r = 0; r < x.rows(); ++r) y[static_cast<std::size_t>(r)] = x(r, 1) > 0.4 ? 1 : 0;
  RandomForest f;
  f.fit(x, y, 9);
  std::size_t correct = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    correct += (f.predict_probability(row_of(x, r)) > 0.5 ? 1 : 0) == y[static_cast<std::size_t>(r)] ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(correct) / 400.0, 0.95);

  RandomForest g;
  g.fit(x, y, 9);
  for (Eigen::Index r = 0; r < x.rows(); ++r) EXPECT_EQ(f.predict_probability(row_of(x, r)), g.predict_probability(row_of(x, r)));
}

TEST(RandomForest, PureLabelsVoteUnanimously) {
  Rng rng(6);
  const auto x = random_matrix(rng, 30, 4);
  RandomForest f(ForestOptions{10, 0});
  f.fit(x, std::vector<int>(30, 1), 1);
  const auto q = random_matrix(rng, 5, 4);
  for (Eigen::Index r = 0; r < q.rows(); ++r) EXPECT_EQ(f.predict_probability(row_of(q, r)), 1.0);
}

TEST(Knn, Examples) {
  FeatureMatrix copies(6, 1);
  copies << 1, 1, 1, 1, 1, 9;
  KNearestNeighbors a(5);
  a.fit(copies, std::vector<int>{1, 1, 1, 1, 1, 0});
  const double one = 1.0;
  EXPECT_EQ(a.predict_probability(std::span<const double>(&one, 1)), 1.0);

  FeatureMatrix mixed(7, 1);
  mixed << 0, 1, 2, 3, 4, 50, 60;
  KNearestNeighbors b(5);
  b.fit(mixed, std::vector<int>{1, 0, 1, 0, 1, 0, 0});
  const double two = 2.0;
  EXPECT_DOUBLE_EQ(b.predict_probability(std::span<const double>(&two, 1)), 0.6);

  KNearestNeighbors c(5);
  EXPECT_THROW(c.fit(FeatureMatrix::Zero(3, 1), std::vector<int>{0, 1, 0}), DomainError);
}

TEST(Knn, EquidistantNeighboursTakenInRowOrder) {
  // Every row sits at distance 1 from the query.
  FeatureMatrix x(6, 1);
  x << -1, 1, -1, 1, 1, -1;
  KNearestNeighbors k(3);
  k.fit(x, std::vector<int>{1, 1, 0, 0, 0, 0});
  const double zero = 0.0;
  EXPECT_EQ(k.neighbours(std::span<const double>(&zero, 1)), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(k.predict_probability(std::span<const double>(&zero, 1)), 2.0 / 3.0);
}

TEST(FrankHall, ScoresFromExceedances) {
  const std::vector<double> p{0.9, 0.6, 0.2};
  const auto s = frank_hall_scores(p);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(s[0], 0.1, 1e-12);
  EXPECT_NEAR(s[1], 0.3, 1e-12);
  EXPECT_NEAR(s[2], 0.4, 1e-12);
  EXPECT_NEAR(s[3], 0.2, 1e-12);
  EXPECT_EQ(argmax_smallest(s), 2);
  EXPECT_EQ(argmax_smallest(std::vector<double>{0.3, 0.3, 0.4 - 0.4}), 0);
}

TEST(FrankHall, ScoresSumToExactlyOne) {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> p(9);
    for (auto& v : p) v = rng.uniform();
    const auto s = frank_hall_scores(p);
    double sum = 0.0;
    for (const double v : s) sum += v;
    EXPECT_EQ(sum, 1.0);
  }
}

TEST(FrankHall, OracleBinariesRecoverLabels) {
  const int k = 10;
  FeatureMatrix x(k * 3, 1);
  std::vector<int> truth;
  for (int i = 0; i < k * 3; ++i) {
    x(i, 0) = i % k;
    truth.push_back(i % k);
  }
  FrankHallModel model{k, BaseKind::Logistic, 0, {}};
  for (int j = 0; j + 1 < k; ++j) {
    model.members.push_back(LogisticRegression::from_parameters(Eigen::VectorXd::Constant(1, 1000.0), -1000.0 * (j + 0.5)));
  }
  const OrdinalModel m = model;
  const auto report = evaluate(m, x, truth);
  EXPECT_EQ(report.bingo, 1.0);
}

TEST(FrankHall, TrainedOnBinnedFeature) {
  Rng rng(8);
  const auto x = random_matrix(rng, 600, 3);
  const auto y = binned_labels(x, 4);
  const auto m = frank_hall_fit(x, y, 4, BaseKind::Logistic, 1);
  EXPECT_EQ(m.members.size(), 3u);
  const auto r = evaluate(OrdinalModel{m}, x, y);
  EXPECT_GE(r.one_away, 0.95);
  EXPECT_THROW(frank_hall_fit(x, y, 1, BaseKind::Logistic, 1), DomainError);
}

TEST(AllThreshold, MonotoneContiguousPredictions) {
  FeatureMatrix x(100, 1);
  std::vector<int> y(100);
  for (int i = 0; i < 100; ++i) {
    x(i, 0) = i / 100.0;
    y[static_cast<std::size_t>(i)] = i / 20;
  }
  const auto m = all_threshold_fit(x, y, 5, 3);
  for (std::size_t t = 1; t < m.thresholds.size(); ++t) EXPECT_LT(m.thresholds[t - 1], m.thresholds[t]);
  int last = -1;
  for (double q = -0.5; q <= 1.5; q += 0.01) {
    const int p = all_threshold_predict(m, std::span<const double>(&q, 1));
    EXPECT_GE(p, last);
    last = p;
  }
  const auto r = evaluate(OrdinalModel{m}, x, y);
  EXPECT_GE(r.bingo, 0.8);
}

TEST(AllThreshold, ZeroWeightsPositiveThresholds) {
  AllThresholdModel m{Eigen::VectorXd::Zero(2), {0.5, 1.0, 2.0}, 0};
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> row{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    EXPECT_EQ(all_threshold_predict(m, row), 0);
  }
}

TEST(AllThreshold, GradientMatchesFiniteDifferences) {
  Rng rng(10);
  const auto x = random_matrix(rng, 30, 3);
  const auto y = binned_labels(x, 5);
  Eigen::VectorXd at(3 + 4);
  for (Eigen::Index i = 0; i < at.size(); ++i) at(i) = rng.uniform(-1.0, 1.0);
  expect_gradient_matches(
      [&](const Eigen::VectorXd& p, Eigen::VectorXd* g) { return all_threshold_objective(x, y, 5, p, 1e-2, g); }, at);
}

TEST(Ensemble, Votes) {
  EXPECT_EQ(ensemble_vote(std::vector<int>{3, 3, 5}), 3);
  EXPECT_EQ(ensemble_vote(std::vector<int>{2, 7}), 2);
  EXPECT_EQ(ensemble_vote(std::vector<int>{7, 2}), 2);
  EXPECT_EQ(ensemble_vote(std::vector<int>{4}), 4);
  EXPECT_THROW(ensemble_vote(std::vector<int>{}), DomainError);
}

TEST(Ensemble, SingleMemberIsIdentity) {
  Rng rng(11);
  const auto x = random_matrix(rng, 120, 2);
  const auto y = binned_labels(x, 3);
  const auto member = all_threshold_fit(x, y, 3, 0);
  const EnsembleModel e{3, 0, {member}};
  for (Eigen::Index r = 0; r < x.rows(); ++r) EXPECT_EQ(ensemble_predict(e, row_of(x, r)), all_threshold_predict(member, row_of(x, r)));
  EXPECT_THROW(ensemble_predict(EnsembleModel{3, 0, {}}, row_of(x, 0)), DomainError);
}

TEST(Evaluate, Examples) {
  const auto near = evaluate(std::vector<int>{5}, std::vector<int>{4}, 10);
  EXPECT_EQ(near.bingo, 0.0);
  EXPECT_EQ(near.one_away, 1.0);
  const std::vector<int> truth{0, 3, 6, 9};
  const auto perfect = evaluate(truth, truth, 10);
  EXPECT_EQ(perfect.bingo, 1.0);
  EXPECT_EQ(perfect.one_away, 1.0);
  const auto far = evaluate(truth, std::vector<int>{2, 5, 8, 7}, 10);
  EXPECT_EQ(far.bingo, 0.0);
  EXPECT_EQ(far.one_away, 0.0);
  EXPECT_EQ(far.confusion[0][2], 1u);
  EXPECT_THROW(evaluate(std::vector<int>{}, std::vector<int>{}, 10), DomainError);
  EXPECT_THROW(evaluate(truth, std::vector<int>{1}, 10), DomainError);
}

TEST(Train, SameSeedIsReproducible) {
  Rng rng(12);
  const auto x = random_matrix(rng, 150, 4);
  const auto y = binned_labels(x, 4);
  TrainOptions o;
  o.base.forest.n_trees = 10;
  for (const auto kind : {ModelKind::FrankHallLogistic, ModelKind::FrankHallForest, ModelKind::FrankHallKnn,
                          ModelKind::AllThreshold, ModelKind::Ensemble}) {
    EXPECT_EQ(parse_model_kind(model_kind_name(kind)), kind);
    const auto a = train(kind, x, y, 4, 42, o);
    const auto b = train(kind, x, y, 4, 42, o);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump()) << model_kind_name(kind);
  }
  EXPECT_THROW(parse_model_kind("svm"), DomainError);
}

TEST(ModelIo, RoundTripPreservesPredictions) {
  Rng rng(13);
  const auto x = random_matrix(rng, 120, 3);
  const auto y = binned_labels(x, 4);
  TrainOptions o;
  o.base.forest.n_trees = 8;
  for (const auto kind : {ModelKind::FrankHallLogistic, ModelKind::FrankHallForest, ModelKind::FrankHallKnn,
                          ModelKind::AllThreshold, ModelKind::Ensemble}) {
    const auto model = train(kind, x, y, 4, 7, o);
    const auto j = to_json(model);
    const auto back = model_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back).dump(), j.dump()) << model_kind_name(kind);
    EXPECT_EQ(predict_all(back, x), predict_all(model, x)) << model_kind_name(kind);
    for (Eigen::Index r = 0; r < 10; ++r) EXPECT_EQ(class_scores(back, row_of(x, r)), class_scores(model, row_of(x, r)));
  }
  EXPECT_THROW(model_from_json(nlohmann::json{{"type", "nope"}}), DomainError);
}

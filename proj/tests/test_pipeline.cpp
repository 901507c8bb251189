#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "boxoffice/ingest/json_io.hpp"
#include "boxoffice/ingest/synthetic.hpp"
#include "boxoffice/pipeline/analyze.hpp"
#include "boxoffice/pipeline/csv.hpp"
#include "boxoffice/pipeline/featurize.hpp"
#include "json.hpp"

using namespace boxoffice;
namespace fs = std::filesystem;

namespace {

std::vector<ingest::MovieRecord> synthetic(std::uint64_t seed, std::size_t n) {
  ingest::SyntheticConfig config;
  config.n_movies = n;
  return ingest::generate_synthetic(config, seed);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("boxoffice_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(BOXOFFICE_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stderr_text() const { return slurp(path("stderr.txt")); }

  fs::path dir_;
};

const std::string kCpi = BOXOFFICE_CPI_TABLE;

}  // namespace

TEST(Csv, MatrixAndLabelsRoundTrip) {
  FeatureMatrix x(2, 3);
  x << 0.1, -2.5e10, 1.0 / 3.0, 0.0, 7.0, 1e-300;
  std::stringstream ss;
  pipeline::write_matrix(ss, {"a", "b", "c"}, x);
  std::vector<std::string> names;
  const auto back = pipeline::read_matrix(ss, &names);
  EXPECT_EQ(names, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(back, x);

  const pipeline::LabelColumn y{{"m1", "m2"}, {3, 0}};
  std::stringstream ls;
  pipeline::write_labels(ls, y);
  const auto yb = pipeline::read_labels(ls);
  EXPECT_EQ(yb.ids, y.ids);
  EXPECT_EQ(yb.labels, y.labels);

  std::stringstream bad("id,label\nm1,x\n");
  EXPECT_THROW(pipeline::read_labels(bad), DomainError);
}

TEST(Analyze, SmallFixtureHasEverySection) {
  const auto records = synthetic(4, 10);
  const auto out = pipeline::analyze(records);
  for (const char* key : {"movies", "revenue_mean", "budget_revenue", "rating_revenue", "raters_revenue",
                          "runtime_revenue", "month_stats", "content_rating", "genre", "star_power"}) {
    EXPECT_TRUE(out.report.contains(key)) << key;
  }
  EXPECT_EQ(out.report["movies"], 10);
  for (const char* file : {"year_totals.csv", "budget_revenue_histogram.csv", "month_stats.csv", "genre_counts.csv"}) {
    EXPECT_TRUE(out.csv.count(file)) << file;
  }
  EXPECT_NO_THROW(nlohmann::json::parse(out.report.dump()));
}

TEST(Analyze, ZeroNoiseBudgetCorrelationIsOne) {
  ingest::SyntheticConfig config;
  config.n_movies = 200;
  config.noise = 0.0;
  const auto records = ingest::generate_synthetic(config, 8);
  const auto out = pipeline::analyze(records);
  EXPECT_DOUBLE_EQ(out.report["budget_revenue"]["spearman"]["statistic"].get<double>(), 1.0);
}

TEST(Featurize, ShapesScalingAndDeterminism) {
  const auto records = synthetic(5, 800);
  pipeline::FeaturizeConfig config;
  config.seed = 17;
  const auto a = pipeline::featurize(records, config);
  const auto b = pipeline::featurize(records, config);
  EXPECT_EQ(a.train.x, b.train.x);
  EXPECT_EQ(a.test.x, b.test.x);
  EXPECT_EQ(a.train.ids, b.train.ids);
  EXPECT_EQ(a.train.x.cols(), 180);
  EXPECT_EQ(static_cast<std::size_t>(a.train.x.rows() + a.test.x.rows()), a.balanced_size);
  EXPECT_EQ(a.balanced_size % 10, 0u);
  EXPECT_GE(a.train.x.minCoeff(), 0.0);
  EXPECT_LE(a.train.x.maxCoeff(), 1.0);
  std::size_t total = 0;
  for (const auto c : a.class_counts) total += c;
  EXPECT_EQ(total, records.size());
  for (const auto& id : a.test.ids) {
    EXPECT_EQ(std::count(a.train.ids.begin(), a.train.ids.end(), id), 0) << id;
  }
}

TEST_F(Cli, EndToEnd) {
  ASSERT_EQ(run("synth --output " + path("raw.jsonl") + " --seed 1 --movies 600"), 0) << stderr_text();
  ASSERT_EQ(run("clean --input " + path("raw.jsonl") + " --output " + path("clean.jsonl") + " --cpi " + kCpi), 0)
      << stderr_text();
  ASSERT_EQ(run("featurize --input " + path("clean.jsonl") + " --output " + path("f") + " --seed 3"), 0)
      << stderr_text();
  for (const char* f : {"train_X.csv", "test_X.csv", "train_y.csv", "test_y.csv", "scaler.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "f" / f)) << f;
  }

  ASSERT_EQ(run("train --input " + path("f") + " --output " + path("m1.json") + " --kind frank-hall-logistic --seed 4"),
            0)
      << stderr_text();
  const auto first = slurp(path("m1.json"));
  ASSERT_EQ(run("train --input " + path("f") + " --output " + path("m1.json") + " --kind frank-hall-logistic --seed 4"),
            0);
  EXPECT_EQ(slurp(path("m1.json")), first);
  const auto model = nlohmann::json::parse(slurp(path("m1.json")));
  EXPECT_EQ(model["members"].size(), 9u);

  ASSERT_EQ(run("train --input " + path("f") + " --output " + path("e.json") + " --kind ensemble --seed 4"), 0)
      << stderr_text();
  EXPECT_EQ(nlohmann::json::parse(slurp(path("e.json")))["members"].size(), 3u);

  ASSERT_EQ(run("evaluate --model " + path("e.json") + " --input " + path("f") + " --output " + path("eval.json")), 0)
      << stderr_text();
  const auto eval = nlohmann::json::parse(slurp(path("eval.json")));
  EXPECT_GE(eval["one_away"].get<double>(), eval["bingo"].get<double>());

  {
    std::ifstream raw(path("raw.jsonl"));
    std::string line;
    std::getline(raw, line);
    std::ofstream(path("movie.json")) << line << '\n';
  }
  ASSERT_EQ(run("predict --model " + path("e.json") + " --scaler " + path("f/scaler.json") + " --movie " +
                path("movie.json") + " --input " + path("clean.jsonl") + " --cpi " + kCpi + " --output " +
                path("pred.json")),
            0)
      << stderr_text();
  const auto pred = nlohmann::json::parse(slurp(path("pred.json")));
  EXPECT_EQ(pred["class_scores"].size(), 10u);
  EXPECT_GE(pred["label"].get<int>(), 0);
  EXPECT_LT(pred["label"].get<int>(), 10);

  ASSERT_EQ(run("analyze --input " + path("clean.jsonl") + " --output " + path("a")), 0) << stderr_text();
  EXPECT_TRUE(fs::exists(dir_ / "a" / "report.json"));
}

TEST_F(Cli, CleanDropsIncompleteRecords) {
  auto records = synthetic(2, 5);
  auto raw = ingest::to_raw(records);
  raw[1].budget.reset();
  raw[3].runtime.reset();
  {
    std::ofstream out(path("in.jsonl"));
    ingest::write_dataset(out, raw);
  }
  ASSERT_EQ(run("clean --input " + path("in.jsonl") + " --output " + path("out.jsonl") + " --cpi " + kCpi), 0)
      << stderr_text();
  std::ifstream in(path("out.jsonl"));
  EXPECT_EQ(ingest::load_dataset(in).records.size(), 3u);
  const auto report = nlohmann::json::parse(slurp(path("out.jsonl.report.json")));
  EXPECT_EQ(report["kept"], 3);
  EXPECT_EQ(report["dropped"], 2);
}

TEST_F(Cli, EmptyInputGivesEmptyOutput) {
  std::ofstream(path("empty.jsonl")).close();
  ASSERT_EQ(run("clean --input " + path("empty.jsonl") + " --output " + path("out.jsonl") + " --cpi " + kCpi), 0);
  EXPECT_EQ(fs::file_size(path("out.jsonl")), 0u);
}

TEST_F(Cli, ExitCodes) {
  std::ofstream(path("empty.jsonl")).close();
  const std::string missing = path("no_such_cpi.txt");
  EXPECT_EQ(run("clean --input " + path("empty.jsonl") + " --output " + path("o.jsonl") + " --cpi " + missing), 2);
  EXPECT_NE(stderr_text().find(missing), std::string::npos);
  EXPECT_EQ(run("clean --input " + path("empty.jsonl")), 1);
  EXPECT_EQ(run("no-such-command"), 1);
  EXPECT_EQ(run("train --input " + path("nowhere") + " --output " + path("m.json") + " --seed 1"), 2);
  EXPECT_EQ(run("train --input " + path("nowhere") + " --output " + path("m.json") + " --seed 1 --kind svm"), 1);
}

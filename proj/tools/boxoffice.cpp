// boxoffice: clean, analyze, featurize, train, evaluate, predict, synth.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxoffice/classify/buckets.hpp"
#include "boxoffice/classify/evaluate.hpp"
#include "boxoffice/classify/model_io.hpp"
#include "boxoffice/classify/ordinal.hpp"
#include "boxoffice/features/assemble.hpp"
#include "boxoffice/features/history.hpp"
#include "boxoffice/features/scaler.hpp"
#include "boxoffice/ingest/clean.hpp"
#include "boxoffice/ingest/cpi.hpp"
#include "boxoffice/ingest/json_io.hpp"
#include "boxoffice/ingest/synthetic.hpp"
#include "boxoffice/pipeline/analyze.hpp"
#include "boxoffice/pipeline/csv.hpp"
#include "boxoffice/pipeline/featurize.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace boxoffice;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Args {
  std::string input;
  std::string output;
  std::string cpi;
  std::string report;
  std::string schema = "detail";
  std::optional<int> reference_year;
  std::optional<int> year_from;
  std::optional<int> year_to;
  std::uint64_t seed = 0;
  double test_fraction = 0.3;
  std::string buckets;
  std::string kind = "frank-hall-logistic";
  std::string solver = "lbfgs";
  std::string model;
  std::string scaler;
  std::string movie;
  bool exclude_dual_genre = false;
  bool nominal_powers = false;
  std::size_t n_movies = 1000;
  std::size_t n_actors = 400;
  std::string law = "budget-monotone";
  double noise = 0.02;
};

json run_config(const std::string& command, const Args& a) {
  json c{{"command", command}, {"input", a.input}, {"output", a.output}, {"seed", a.seed}};
  if (!a.cpi.empty()) c["cpi"] = a.cpi;
  if (a.reference_year) c["reference_year"] = *a.reference_year;
  json years{{"from", a.year_from ? json(*a.year_from) : json()}, {"to", a.year_to ? json(*a.year_to) : json()}};
  c["year_filter"] = years;
  c["test_fraction"] = a.test_fraction;
  c["buckets"] = a.buckets.empty() ? json() : json(a.buckets);
  c["flags"] = {{"include_dual_genre", !a.exclude_dual_genre}, {"adjusted_revenue_in_powers", !a.nominal_powers}};
  if (command == "train") {
    c["kind"] = a.kind;
    c["solver"] = a.solver;
  }
  if (!a.model.empty()) c["model"] = a.model;
  return c;
}

void write_json(const std::string& path, const json& j) {
  auto out = pipeline::open_output(path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  auto in = pipeline::open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

/// Reads a cleaned dataset; any unusable record is a data error here.
std::vector<ingest::MovieRecord> read_cleaned(const std::string& path) {
  auto in = pipeline::open_input(path);
  auto loaded = ingest::load_dataset(in);
  if (!loaded.errors.empty()) {
    const auto& e = loaded.errors.front();
    throw DomainError(path + ": record " + std::to_string(e.record) + ": " + e.message);
  }
  auto [records, report] = ingest::clean(loaded.records);
  if (report.dropped() > 0) {
    for (const auto& [field, n] : report.dropped_by_missing_field) {
      if (n > 0) throw DomainError(path + ": " + std::to_string(n) + " record(s) lack '" + field + "'; run clean first");
    }
  }
  return std::move(records);
}

std::optional<ingest::CpiTable> optional_cpi(const Args& a) {
  if (a.cpi.empty()) return std::nullopt;
  return ingest::CpiTable::load(a.cpi, a.reference_year);
}

features::RevenueBasis basis_of(const Args& a, const std::optional<ingest::CpiTable>& cpi) {
  if (!a.nominal_powers) return features::RevenueBasis::Adjusted;
  if (!cpi) throw DomainError("--nominal-powers needs --cpi");
  return features::RevenueBasis::Nominal;
}

classify::ClassBuckets buckets_of(const Args& a) {
  return a.buckets.empty() ? classify::ClassBuckets() : classify::ClassBuckets::parse_millions(a.buckets);
}

int cmd_clean(const Args& a) {
  const auto cpi = ingest::CpiTable::load(a.cpi, a.reference_year);
  auto in = pipeline::open_input(a.input);
  const auto schema = a.schema == "summary" ? ingest::Schema::Summary : ingest::Schema::Detail;
  const auto loaded = ingest::load_dataset(in, schema);
  auto [records, report] = ingest::clean(loaded.records, ingest::YearFilter{a.year_from, a.year_to});
  records = ingest::adjust_dataset(std::move(records), cpi);

  auto out = pipeline::open_output(a.output);
  ingest::write_dataset(out, records);

  json doc = ingest::to_json(report);
  doc["input_records"] = loaded.records.size() + loaded.errors.size();
  doc["reference_year"] = cpi.reference_year();
  json errors = json::array();
  for (const auto& e : loaded.errors) {
    errors.push_back({{"record", e.record}, {"offset", e.offset}, {"field", e.field}, {"message", e.message}});
  }
  doc["parse_errors"] = std::move(errors);
  doc["config"] = run_config("clean", a);
  write_json(a.report.empty() ? a.output + ".report.json" : a.report, doc);
  std::cout << "kept " << report.kept << ", dropped " << report.dropped() << ", parse errors " << loaded.errors.size()
            << '\n';
  return 0;
}

int cmd_analyze(const Args& a) {
  const auto records = read_cleaned(a.input);
  const auto cpi = optional_cpi(a);
  pipeline::AnalyzeOptions options;
  options.include_dual_genre = !a.exclude_dual_genre;
  options.basis = basis_of(a, cpi);
  options.cpi = cpi ? &*cpi : nullptr;
  auto result = pipeline::analyze(records, options);
  fs::create_directories(a.output);
  result.report["config"] = run_config("analyze", a);
  write_json((fs::path(a.output) / "report.json").string(), result.report);
  for (const auto& [name, text] : result.csv) {
    auto out = pipeline::open_output((fs::path(a.output) / name).string());
    out << text;
  }
  std::cout << "analyzed " << records.size() << " movies into " << a.output << '\n';
  return 0;
}

int cmd_featurize(const Args& a) {
  const auto records = read_cleaned(a.input);
  const auto cpi = optional_cpi(a);
  pipeline::FeaturizeConfig config;
  config.seed = a.seed;
  config.test_fraction = a.test_fraction;
  config.buckets = buckets_of(a);
  config.basis = basis_of(a, cpi);
  config.cpi = cpi ? &*cpi : nullptr;
  const auto result = pipeline::featurize(records, config);

  fs::create_directories(a.output);
  const auto dir = fs::path(a.output);
  const auto names = features::feature_names();
  {
    auto out = pipeline::open_output((dir / "train_X.csv").string());
    pipeline::write_matrix(out, names, result.train.x);
  }
  {
    auto out = pipeline::open_output((dir / "test_X.csv").string());
    pipeline::write_matrix(out, names, result.test.x);
  }
  {
    auto out = pipeline::open_output((dir / "train_y.csv").string());
    pipeline::write_labels(out, {result.train.ids, result.train.y});
  }
  {
    auto out = pipeline::open_output((dir / "test_y.csv").string());
    pipeline::write_labels(out, {result.test.ids, result.test.y});
  }
  json buckets = json::array();
  for (const auto& b : config.buckets.boundaries()) buckets.push_back(b.dollars());
  json scaler = features::to_json(result.scaler);
  scaler["month_stats"] = pipeline::to_json(result.month_stats);
  scaler["num_classes"] = config.buckets.num_classes();
  scaler["bucket_boundaries"] = buckets;
  scaler["feature_names"] = names;
  scaler["config"] = run_config("featurize", a);
  write_json((dir / "scaler.json").string(), scaler);

  json report{{"movies", records.size()},
              {"class_counts", result.class_counts},
              {"balanced", result.balanced_size},
              {"train_rows", result.train.y.size()},
              {"test_rows", result.test.y.size()},
              {"feature_dim", features::kFeatureDim},
              {"config", run_config("featurize", a)}};
  write_json((dir / "featurize_report.json").string(), report);
  std::cout << "train " << result.train.y.size() << ", test " << result.test.y.size() << ", width "
            << features::kFeatureDim << '\n';
  return 0;
}

struct LabelledMatrix {
  FeatureMatrix x;
  std::vector<int> y;
};

LabelledMatrix read_split(const std::string& dir, const std::string& split) {
  auto xin = pipeline::open_input((fs::path(dir) / (split + "_X.csv")).string());
  auto yin = pipeline::open_input((fs::path(dir) / (split + "_y.csv")).string());
  LabelledMatrix m{pipeline::read_matrix(xin), pipeline::read_labels(yin).labels};
  if (static_cast<Eigen::Index>(m.y.size()) != m.x.rows()) throw DomainError(split + ": feature/label row mismatch");
  return m;
}

int cmd_train(const Args& a) {
  const auto kind = classify::parse_model_kind(a.kind);
  const auto data = read_split(a.input, "train");
  const auto scaler = read_json((fs::path(a.input) / "scaler.json").string());
  const int k = scaler.at("num_classes").get<int>();
  classify::TrainOptions options;
  if (a.solver == "gd") {
    options.base.logistic.solver = classify::LogisticSolver::GradientDescent;
  } else if (a.solver != "lbfgs") {
    throw CLI::ValidationError("--solver", "expected lbfgs or gd");
  }
  const auto model = classify::train(kind, data.x, data.y, k, a.seed, options);
  json doc = classify::to_json(model);
  doc["config"] = run_config("train", a);
  doc["scaler"] = (fs::path(a.input) / "scaler.json").string();
  auto out = pipeline::open_output(a.output);
  out << doc.dump() << '\n';
  std::cout << "trained " << a.kind << " on " << data.y.size() << " rows\n";
  return 0;
}

int cmd_evaluate(const Args& a) {
  const auto model = classify::load_model(a.model);
  const auto data = read_split(a.input, "test");
  const auto report = classify::evaluate(model, data.x, data.y);
  json doc = classify::to_json(report);
  doc["config"] = run_config("evaluate", a);
  if (a.output.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(a.output, doc);
    std::cout << "bingo " << report.bingo << ", one_away " << report.one_away << '\n';
  }
  return 0;
}

int cmd_predict(const Args& a) {
  const auto model = classify::load_model(a.model);
  const auto scaler_doc = read_json(a.scaler);
  const auto scaler = features::scaling_params_from_json(scaler_doc);
  const auto months = pipeline::month_stats_from_json(scaler_doc.at("month_stats"));
  const auto cpi = ingest::CpiTable::load(a.cpi, a.reference_year);

  auto in = pipeline::open_input(a.movie);
  const auto loaded = ingest::load_dataset(in);
  if (!loaded.errors.empty()) throw DomainError(a.movie + ": " + loaded.errors.front().message);
  if (loaded.records.size() != 1) throw DomainError(a.movie + ": expected exactly one movie");
  auto [cleaned, report] = ingest::clean(loaded.records);
  if (cleaned.empty()) {
    for (const auto& [field, n] : report.dropped_by_missing_field) {
      if (n > 0) throw DomainError(a.movie + ": missing or invalid '" + field + "'");
    }
  }
  const auto movie = ingest::adjust_dataset(std::move(cleaned), cpi).front();

  const auto history = read_cleaned(a.input);
  const auto basis = a.nominal_powers ? features::RevenueBasis::Nominal : features::RevenueBasis::Adjusted;
  const auto index = features::HistoryIndex::build(history, basis, &cpi);
  const auto raw = features::assemble(movie, index, months);
  const auto row = features::apply_scaler(raw, scaler);
  const int label = classify::predict(model, row);
  const auto scores = classify::class_scores(model, row);

  json doc{{"id", movie.id}, {"label", label}, {"class_scores", scores}, {"config", run_config("predict", a)}};
  if (a.output.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(a.output, doc);
  }
  return 0;
}

int cmd_synth(const Args& a) {
  ingest::SyntheticConfig config;
  config.n_movies = a.n_movies;
  config.n_actors = a.n_actors;
  if (a.year_from) config.year_from = *a.year_from;
  if (a.year_to) config.year_to = *a.year_to;
  config.noise = a.noise;
  if (a.law == "independent") {
    config.revenue_law = ingest::RevenueLaw::Independent;
  } else if (a.law != "budget-monotone") {
    throw CLI::ValidationError("--law", "expected budget-monotone or independent");
  }
  const auto records = ingest::generate_synthetic(config, a.seed);
  auto out = pipeline::open_output(a.output);
  ingest::write_dataset(out, records);
  std::cout << "wrote " << records.size() << " movies\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-office revenue analysis and ordinal revenue-class prediction"};
  app.require_subcommand(1);
  Args a;

  auto* clean = app.add_subcommand("clean", "Drop incomplete records and adjust money for inflation");
  clean->add_option("--input", a.input, "Raw dataset (record-per-line JSON or a JSON array)")->required();
  clean->add_option("--output", a.output, "Cleaned dataset")->required();
  clean->add_option("--cpi", a.cpi, "CPI table (year index per line)")->required();
  clean->add_option("--reference-year", a.reference_year, "Target year for dollars (default: latest CPI year)");
  clean->add_option("--year-from", a.year_from, "Earliest release year kept");
  clean->add_option("--year-to", a.year_to, "Latest release year kept");
  clean->add_option("--schema", a.schema, "Input schema")->check(CLI::IsMember({"detail", "summary"}));
  clean->add_option("--report", a.report, "Clean report path (default: <output>.report.json)");

  auto* analyze = app.add_subcommand("analyze", "Run the statistical association battery");
  analyze->add_option("--input", a.input, "Cleaned dataset")->required();
  analyze->add_option("--output", a.output, "Output directory")->required();
  analyze->add_flag("--exclude-dual-genre", a.exclude_dual_genre, "Drop movies listing both genres of the genre KS pair");
  analyze->add_flag("--nominal-powers", a.nominal_powers, "Star thresholds on nominal instead of adjusted revenue");
  analyze->add_option("--cpi", a.cpi, "CPI table, needed with --nominal-powers");

  auto* featurize = app.add_subcommand("featurize", "Build train/test feature matrices");
  featurize->add_option("--input", a.input, "Cleaned dataset")->required();
  featurize->add_option("--output", a.output, "Output directory")->required();
  featurize->add_option("--seed", a.seed, "Seed for balancing and splitting")->required();
  featurize->add_option("--test-fraction", a.test_fraction, "Share of balanced movies held out")->check(CLI::Range(0.0, 1.0));
  featurize->add_option("--buckets", a.buckets, "Class boundaries in millions, comma separated");
  featurize->add_flag("--nominal-powers", a.nominal_powers, "Power features on nominal revenue");
  featurize->add_option("--cpi", a.cpi, "CPI table, needed with --nominal-powers");

  auto* train = app.add_subcommand("train", "Train an ordinal model");
  train->add_option("--input", a.input, "Feature directory from featurize")->required();
  train->add_option("--output", a.output, "Model file")->required();
  train->add_option("--kind", a.kind, "Model kind")
      ->check(CLI::IsMember({"frank-hall-logistic", "frank-hall-forest", "frank-hall-knn", "all-threshold", "ensemble"}));
  train->add_option("--seed", a.seed, "Training seed")->required();
  train->add_option("--solver", a.solver, "Logistic solver")->check(CLI::IsMember({"lbfgs", "gd"}));

  auto* evaluate = app.add_subcommand("evaluate", "Score a model on the held-out split");
  evaluate->add_option("--model", a.model, "Model file")->required();
  evaluate->add_option("--input", a.input, "Feature directory from featurize")->required();
  evaluate->add_option("--output", a.output, "Report path (default: stdout)");

  auto* predict = app.add_subcommand("predict", "Predict the revenue class of one movie");
  predict->add_option("--model", a.model, "Model file")->required();
  predict->add_option("--scaler", a.scaler, "scaler.json from featurize")->required();
  predict->add_option("--movie", a.movie, "Movie document in raw dollars")->required();
  predict->add_option("--input", a.input, "Cleaned dataset supplying the history")->required();
  predict->add_option("--cpi", a.cpi, "CPI table")->required();
  predict->add_option("--reference-year", a.reference_year, "Target year for dollars");
  predict->add_flag("--nominal-powers", a.nominal_powers, "Power features on nominal revenue");
  predict->add_option("--output", a.output, "Result path (default: stdout)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--output", a.output, "Dataset path")->required();
  synth->add_option("--seed", a.seed, "Generator seed")->required();
  synth->add_option("--movies", a.n_movies, "Number of movies");
  synth->add_option("--actors", a.n_actors, "Size of the actor pool");
  synth->add_option("--year-from", a.year_from, "First release year");
  synth->add_option("--year-to", a.year_to, "Last release year");
  synth->add_option("--law", a.law, "Revenue law")->check(CLI::IsMember({"budget-monotone", "independent"}));
  synth->add_option("--noise", a.noise, "Log-revenue noise standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (clean->parsed()) return cmd_clean(a);
    if (analyze->parsed()) return cmd_analyze(a);
    if (featurize->parsed()) return cmd_featurize(a);
    if (train->parsed()) return cmd_train(a);
    if (evaluate->parsed()) return cmd_evaluate(a);
    if (predict->parsed()) return cmd_predict(a);
    if (synth->parsed()) return cmd_synth(a);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

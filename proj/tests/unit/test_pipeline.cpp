#include <doctest.h>

#include <cstdlib>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "trendcast/error.hpp"
#include "trendcast/pipeline.hpp"
#include "trendcast/text_io.hpp"

using namespace trendcast;
namespace fs = std::filesystem;

namespace {

RunConfig base_config(const fs::path& dir, std::size_t bars) {
  Rng rng(5);
  write_text_file(dir / "prices.csv", to_ohlcv_csv(fixture::random_series(rng, bars)));
  write_text_file(dir / "news.jsonl", "");
  const std::string data = TRENDCAST_DATA_DIR;
  nlohmann::json cfg{{"ticker", "AAPL"},
                     {"inputs",
                      {{"prices", "prices.csv"},
                       {"news", "news.jsonl"},
                       {"lexicon", data + "/lexicon/vader_lexicon.tsv"},
                       {"negators", data + "/lexicon/negators.txt"},
                       {"stopwords", data + "/stopwords_en.txt"},
                       {"keywords", data + "/keywords/aapl.txt"}}},
                     {"output_dir", "out"}};
  write_text_file(dir / "config.json", cfg.dump());
  return load_run_config(dir / "config.json");
}

// Features whose label is the sign of a fixed linear score with a margin.
void write_separable_features(const fs::path& path, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto d = fixture::separable_dataset(rng, n, 3, 0.15);
  FeatureMatrix m;
  m.column_names = {"RSI", "Sentiment", "SMA"};
  m.values = d.x;
  m.labels = d.y;
  m.dates = fixture::trading_days(
      Date{std::chrono::year{2016}, std::chrono::January, std::chrono::day{4}}, n);
  write_text_file(path, to_feature_csv(m));
}

void small_grids(RunConfig& c) {
  c.cv_folds = 5;
  c.logreg_grid.learning_rate = {0.5};
  c.logreg_grid.l2_penalty = {0.0, 0.001};
  c.logreg_grid.epochs = {1000};
  c.forest_grid.n_trees = {50};
  c.forest_grid.max_depth = {6};
  c.boosting_grid.n_rounds = {100};
  c.boosting_grid.shrinkage = {0.1};
  c.boosting_grid.max_depth = {3};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TRENDCAST_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_run_config(R"({"ticker": "NFLX", "seed": 7, "split": {"mode": "random"},
      "models": ["rf"], "grids": {"random_forest": {"n_trees": [10, 20]}},
      "inputs": {"prices": "p.csv"}})",
                                  "/base");
  CHECK(c.ticker == "NFLX");
  CHECK(c.seed == 7);
  CHECK(c.split_mode == SplitMode::random);
  CHECK(c.families == std::vector<ModelFamily>{ModelFamily::random_forest});
  CHECK(c.forest_grid.n_trees == std::vector<std::size_t>{10, 20});
  CHECK(c.prices_csv == fs::path("/base/p.csv"));
  CHECK_THROWS_AS(parse_run_config(R"({"tikcer": "X"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{"), ConfigError);

  auto empty = parse_run_config(R"({"grids": {"gradient_boosting": {"shrinkage": []}}})");
  CHECK_THROWS_AS(validate_config(empty, false), ConfigError);
  auto zero = parse_run_config(R"({"grids": {"random_forest": {"n_trees": [0]}}})");
  CHECK_THROWS_AS(validate_config(zero, false), ConfigError);
  CHECK_NOTHROW(validate_config(parse_run_config("{}"), false));
}

TEST_CASE("100 bars with an empty news file") {
  const auto dir = fixture::scratch_dir("pipeline_100");
  const auto c = base_config(dir, 100);
  const auto build = cmd_build_features(c);
  CHECK(build.selected.rows() == 85);
  const auto col = *build.selected.column_index("Sentiment");
  for (double v : build.selected.values.column(col)) CHECK(v == 0.0);
  for (const auto& s : build.stages) CHECK(s.rows_out + s.rows_dropped == s.rows_in);

  const auto csv = parse_feature_csv(read_text_file(dir / "out" / "features.csv"));
  CHECK(csv.rows() == 85);
  CHECK(csv.values == build.selected.values);
  CHECK(fs::exists(dir / "out" / "correlation.csv"));
  CHECK(fs::exists(dir / "out" / "correlation.json"));
  const auto report = nlohmann::json::parse(read_text_file(dir / "out" / "run_report.json"));
  CHECK(report["stages"].is_array());
}

TEST_CASE("10 bars fail in the indicator stage") {
  const auto dir = fixture::scratch_dir("pipeline_10");
  const auto c = base_config(dir, 10);
  try {
    build_features(c);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "indicators");
    CHECK(std::string(e.what()).find("16") != std::string::npos);
  }
}

TEST_CASE("separable fixture: every tuned model reaches 0.95, runs are reproducible") {
  const auto dir = fixture::scratch_dir("pipeline_sep");
  write_separable_features(dir / "features.csv", 300, 11);
  RunConfig c;
  c.features_csv = dir / "features.csv";
  c.output_dir = dir / "out";
  small_grids(c);
  const auto first = cmd_train(c);
  for (const auto& r : first.reports) {
    INFO(to_string(r.family));
    CHECK(r.test_metrics.accuracy.value >= 0.95);
  }
  const auto metrics = read_text_file(dir / "out" / "metrics.json");
  const auto second = cmd_train(c);
  CHECK(read_text_file(dir / "out" / "metrics.json") == metrics);
  CHECK(second.table == first.table);
  CHECK(fs::exists(dir / "out" / "table2.txt"));

  SUBCASE("predictions from a saved model") {
    const auto model = model_from_json(read_text_file(dir / "out" / "model_random_forest.json"));
    const auto features = parse_feature_csv(read_text_file(dir / "features.csv"));
    const auto preds = predict_rows(model, features);
    CHECK(preds.size() == features.rows());
    // Same row, same answer, whichever entry point.
    const auto row = features.values.row(5);
    std::string text;
    for (double v : row) text += (text.empty() ? "" : ",") + format_double(v);
    CHECK(predict_row(model, text).label == preds[5].label);
    CHECK(predict_row(model, text).probability == preds[5].probability);

    FeatureMatrix fewer = features;
    fewer.column_names.pop_back();
    fewer.values = features.values.select_cols(std::vector<std::size_t>{0, 1});
    try {
      predict_rows(model, fewer);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("SMA") != std::string::npos);
    }
  }
}

TEST_CASE("single-class train split is reported with class counts") {
  const auto dir = fixture::scratch_dir("pipeline_oneclass");
  FeatureMatrix m;
  m.column_names = {"a"};
  for (int i = 0; i < 20; ++i) {
    m.values.append_row(std::vector<double>{static_cast<double>(i)});
    m.labels.push_back(i >= 18 ? 1 : 0);
  }
  m.dates = fixture::trading_days(
      Date{std::chrono::year{2016}, std::chrono::January, std::chrono::day{4}}, 20);
  RunConfig c;
  try {
    train_models(c, m);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(std::string(e.what()).find("0 Up, 16 Down") != std::string::npos);
  }
}

TEST_CASE("command-line driver") {
  const auto dir = fixture::scratch_dir("pipeline_cli");
  base_config(dir, 120);
  const std::string cfg = (dir / "config.json").string();
  CHECK(run_cli("build-features --config " + cfg) == 0);
  CHECK(fs::exists(dir / "out" / "features.csv"));

  // Small grids through the config file keep this quick.
  auto doc = nlohmann::json::parse(read_text_file(dir / "config.json"));
  doc["cv"] = {{"folds", 3}};
  doc["grids"] = {{"logistic_regression", {{"learning_rate", {0.1}}, {"l2_penalty", {0.0}}}},
                  {"random_forest", {{"n_trees", {10}}, {"max_depth", {3}}}},
                  {"gradient_boosting", {{"n_rounds", {10}}, {"shrinkage", {0.1}}, {"max_depth", {2}}}}};
  write_text_file(dir / "config.json", doc.dump());
  CHECK(run_cli("train --config " + cfg + " --seed 3 --split-mode random --out " +
                (dir / "run").string()) == 0);
  for (const char* f : {"metrics.json", "table2.txt", "model_logistic_regression.json",
                        "model_random_forest.json", "model_gradient_boosting.json",
                        "run_report.json"})
    CHECK(fs::exists(dir / "run" / f));
  const auto metrics = nlohmann::json::parse(read_text_file(dir / "run" / "metrics.json"));
  CHECK(metrics["seed"] == 3);
  CHECK(metrics["split"]["mode"] == "random");

  CHECK(run_cli("predict --model " + (dir / "run" / "model_gradient_boosting.json").string() +
                " --input " + (dir / "out" / "features.csv").string() + " --out " +
                (dir / "pred.csv").string()) == 0);
  const auto pred_text = read_text_file(dir / "pred.csv");
  const auto lines = split_lines(pred_text);
  CHECK(lines.front() == "row,label,probability");

  const auto before = read_text_file(dir / "run" / "table2.txt");
  fs::remove(dir / "run" / "table2.txt");
  CHECK(run_cli("report --out " + (dir / "run").string()) == 0);
  CHECK(read_text_file(dir / "run" / "table2.txt") == before);

  CHECK(run_cli("train --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("frobnicate") != 0);
}

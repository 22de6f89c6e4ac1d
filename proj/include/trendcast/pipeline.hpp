#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trendcast/features.hpp"
#include "trendcast/indicators.hpp"
#include "trendcast/metrics.hpp"
#include "trendcast/model.hpp"
#include "trendcast/sentiment.hpp"
#include "trendcast/validation.hpp"

namespace trendcast {

/// Everything a run needs. Relative paths in a config file are resolved
/// against the file's directory.
struct RunConfig {
  std::string ticker = "AAPL";
  std::filesystem::path prices_csv;
  std::filesystem::path news_jsonl;  // empty: no news, sentiment is 0 everywhere
  std::filesystem::path lexicon_tsv;
  std::filesystem::path negators_txt;
  std::filesystem::path stopwords_txt;
  std::filesystem::path keywords_txt;
  std::filesystem::path features_csv;  // train: read instead of rebuilding
  std::filesystem::path output_dir = "out";

  IndicatorParams indicators;
  Aggregation aggregation = Aggregation::mean;
  DropPolicy drop;

  double split_ratio = 0.8;
  SplitMode split_mode = SplitMode::chronological;
  std::uint64_t seed = 42;
  std::size_t cv_folds = 10;
  SelectionMetric selection_metric = SelectionMetric::accuracy;

  std::vector<ModelFamily> families{ModelFamily::logistic_regression,
                                    ModelFamily::random_forest,
                                    ModelFamily::gradient_boosting};
  LogRegGrid logreg_grid;
  ForestGrid forest_grid;
  BoostingGrid boosting_grid;
};

/// Parses the JSON config document. Unknown keys are rejected. Throws
/// ConfigError.
RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Checks ranges, grids and (when `check_paths`) that input files exist.
void validate_config(const RunConfig& config, bool check_paths = true);

/// Row accounting for one stage: rows_out + rows_dropped == rows_in.
struct StageCount {
  std::string stage;
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::size_t rows_dropped = 0;
  std::string note;
};

struct FeatureBuild {
  FeatureMatrix full;      // joined, before column selection
  FeatureMatrix selected;  // what the models see
  CorrelationMatrix correlation;  // over `full`
  std::vector<StageCount> stages;
  std::vector<std::string> warnings;
};

/// Ingest -> preprocess -> sentiment -> indicators -> join -> select.
/// Errors are rethrown as StageError naming the failing stage.
FeatureBuild build_features(const RunConfig& config);

/// build_features plus features.csv, correlation.csv, correlation.json and
/// run_report.json in config.output_dir.
FeatureBuild cmd_build_features(const RunConfig& config);

struct ModelReport {
  ModelFamily family;
  GridSearchResult search;
  ConfusionMatrix test_confusion;
  MetricSet test_metrics;
  PersistedModel model;
};

struct TrainOutcome {
  std::vector<ModelReport> reports;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::string metrics_json;
  std::string table;
};

/// Grid search with k-fold CV per family on the train split, refit of the
/// best point on the whole train split, one evaluation on the test split.
/// Writes metrics.json, table2.txt, model_<family>.json and run_report.json.
/// Throws StageError naming the class counts when the train split lacks a class.
TrainOutcome cmd_train(const RunConfig& config);

/// Same as cmd_train but on an already built feature matrix; writes nothing.
TrainOutcome train_models(const RunConfig& config, const FeatureMatrix& features);

struct Prediction {
  int label = 0;
  double probability = 0.0;
};

/// Columns are matched by name (order-free); Date and TomorrowTrend columns
/// are ignored. Throws SchemaError listing missing and extra columns.
std::vector<Prediction> predict_rows(const PersistedModel& model, const FeatureMatrix& input);

/// One comma-separated row of values in the model's feature order.
Prediction predict_row(const PersistedModel& model, std::string_view csv_values);

/// "row,label,probability" CSV text.
std::string predictions_to_csv(const std::vector<Prediction>& predictions);

/// Renders the comparison table from a metrics.json document.
std::string render_report(std::string_view metrics_json);

}  // namespace trendcast

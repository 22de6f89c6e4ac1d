#include "trendcast/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"
#include "trendcast/market_data.hpp"
#include "trendcast/news_pipeline.hpp"
#include "trendcast/random.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

using nlohmann::ordered_json;

namespace {

template <typename F>
auto run_stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json stages_to_json(const std::vector<StageCount>& stages) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : stages) {
    arr.push_back({{"stage", s.stage},
                   {"rows_in", s.rows_in},
                   {"rows_out", s.rows_out},
                   {"rows_dropped", s.rows_dropped},
                   {"note", s.note}});
  }
  return arr;
}

void write_run_report(const RunConfig& config, const std::string& command,
                      const std::vector<StageCount>& stages,
                      const std::vector<std::string>& warnings, ordered_json extra = {}) {
  ordered_json report;
  report["command"] = command;
  report["ticker"] = config.ticker;
  report["seed"] = config.seed;
  report["generated_at"] = utc_timestamp();
  report["stages"] = stages_to_json(stages);
  report["warnings"] = warnings;
  if (!extra.is_null()) report["details"] = std::move(extra);
  write_text_file(config.output_dir / "run_report.json", report.dump(2) + "\n");
}

std::string family_label(ModelFamily f) {
  switch (f) {
    case ModelFamily::logistic_regression:
      return "Logistic Regression";
    case ModelFamily::random_forest:
      return "Random Forest";
    case ModelFamily::gradient_boosting:
      return "Gradient Boosting";
  }
  return "?";
}

std::vector<ModelParams> grid_for(const RunConfig& c, ModelFamily f) {
  switch (f) {
    case ModelFamily::logistic_regression:
      return expand_grid(c.logreg_grid);
    case ModelFamily::random_forest:
      return expand_grid(c.forest_grid);
    case ModelFamily::gradient_boosting:
      return expand_grid(c.boosting_grid);
  }
  return {};
}

ordered_json summary_json(const MetricSummary& s) {
  return {{"mean", s.mean}, {"std", s.stddev}};
}

ordered_json params_json(const ModelParams& p) {
  return ordered_json::parse(hyperparams_to_json(p));
}

}  // namespace

FeatureBuild build_features(const RunConfig& config) {
  FeatureBuild out;

  const BarSeries prices = run_stage("ingest_prices", [&] {
    BarSeries s = load_ohlcv_csv(config.prices_csv, config.ticker);
    const ValidationReport report = validate_series(s);
    if (!report.ok()) {
      std::string msg = std::to_string(report.violations.size()) + " invalid bar(s) in " +
                        config.prices_csv.string() + ":";
      for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
        msg += " [" + report.violations[i].message + "]";
      }
      throw ValidationError(msg);
    }
    return s;
  });
  out.stages.push_back({"ingest_prices", prices.size(), prices.size(), 0, config.prices_csv.string()});

  std::vector<DailySentiment> daily;
  if (!config.news_jsonl.empty()) {
    const NewsLoadResult news = run_stage("ingest_news", [&] { return load_news_jsonl(config.news_jsonl); });
    out.stages.push_back({"ingest_news", news.lines_read, news.articles.size(), news.dropped_empty,
                          "records with an empty article body are dropped"});

    const PreprocessedCorpus corpus = run_stage("preprocess_news", [&] {
      const Stoplist stop = load_stoplist(config.stopwords_txt);
      const KeywordSet keywords = load_keywords(config.keywords_txt, config.ticker);
      return preprocess_corpus(news.articles, keywords, stop);
    });
    out.stages.push_back({"preprocess_news", corpus.stats.articles_in, corpus.stats.articles_out,
                          corpus.stats.dropped_empty + corpus.stats.dropped_unmatched,
                          std::to_string(corpus.stats.dropped_unmatched) + " without a keyword, " +
                              std::to_string(corpus.stats.dropped_empty) + " empty after cleaning"});

    const auto scores = run_stage("score_sentiment", [&] {
      const Lexicon lex = load_lexicon(config.lexicon_tsv, config.negators_txt);
      return score_corpus(corpus.articles, lex);
    });
    out.stages.push_back({"score_sentiment", corpus.articles.size(), scores.size(), 0, ""});

    daily = aggregate_daily(scores, config.aggregation);
    out.stages.push_back({"aggregate_daily", scores.size(), daily.size(), scores.size() - daily.size(),
                          std::string("same-day articles merged by ") +
                              (config.aggregation == Aggregation::mean ? "mean" : "sum")});
  }

  const auto rows = run_stage("indicators", [&] { return build_indicator_frame(prices, config.indicators); });
  out.stages.push_back({"indicators", prices.size(), rows.size(), prices.size() - rows.size(),
                        "warm-up rows and the final unlabeled row are dropped"});

  std::map<Date, bool> trading_days;
  for (const auto& r : rows) trading_days[r.date] = true;
  const std::size_t aligned = static_cast<std::size_t>(std::count_if(
      daily.begin(), daily.end(), [&](const DailySentiment& d) { return trading_days.contains(d.date); }));
  out.stages.push_back({"align_sentiment", daily.size(), aligned, daily.size() - aligned,
                        "sentiment on dates without a feature row is ignored"});

  out.full = run_stage("join", [&] { return join_features(rows, daily, {.include_price_block = true}); });
  out.stages.push_back({"join", rows.size(), out.full.rows(), 0,
                        std::to_string(aligned) + " rows carry news sentiment, the rest are 0"});

  out.correlation = run_stage("correlation", [&] { return pearson_matrix(out.full); });

  SelectionResult selected = select_features(out.full, config.drop);
  out.selected = std::move(selected.matrix);
  out.warnings = std::move(selected.warnings);
  out.stages.push_back({"select_features", out.full.rows(), out.selected.rows(), 0,
                        std::to_string(out.full.cols() - out.selected.cols()) + " column(s) dropped"});
  return out;
}

FeatureBuild cmd_build_features(const RunConfig& config) {
  RunConfig c = config;
  c.features_csv.clear();
  validate_config(c);
  FeatureBuild build = build_features(c);
  write_text_file(c.output_dir / "features.csv", to_feature_csv(build.selected));
  write_text_file(c.output_dir / "correlation.csv", build.correlation.to_csv());
  write_text_file(c.output_dir / "correlation.json", build.correlation.to_json());
  ordered_json extra;
  extra["feature_columns"] = build.selected.column_names;
  write_run_report(c, "build-features", build.stages, build.warnings, extra);
  return build;
}

TrainOutcome train_models(const RunConfig& config, const FeatureMatrix& features) {
  features.check_shape();
  TrainOutcome outcome;
  const TrainTestSplit split = run_stage("split", [&] {
    return split_train_test(features, config.split_ratio, config.split_mode, config.seed);
  });
  outcome.train_rows = split.train.rows();
  outcome.test_rows = split.test.rows();

  const std::size_t ups = static_cast<std::size_t>(
      std::accumulate(split.train.labels.begin(), split.train.labels.end(), 0));
  if (ups == 0 || ups == split.train.rows()) {
    throw StageError("train", "degenerate label distribution in train split: " + std::to_string(ups) +
                                  " Up, " + std::to_string(split.train.rows() - ups) + " Down");
  }

  const CVOptions cv{config.cv_folds, config.split_mode, config.seed};
  ordered_json models = ordered_json::array();
  std::vector<ComparisonRow> table_rows;
  for (ModelFamily family : config.families) {
    const std::string stage = "train_" + std::string(to_string(family));
    ModelReport report = run_stage(stage, [&] {
      ModelReport r{family, grid_search(split.train, grid_for(config, family), cv,
                                        config.selection_metric),
                    {}, {}, {}};
      const ModelParams& best = r.search.best().params;
      const ScaledMatrix scaled = min_max_scale(split.train, split.train);
      const TrainedModel model = fit_model(best, scaled.matrix.values, scaled.matrix.labels,
                                           derive_seed(config.seed, fnv1a(describe(best)), fnv1a("final")));
      const FeatureMatrix test = scaled.state.transform(split.test);
      r.test_confusion = confusion(test.labels, predict_all(model, test.values));
      r.test_metrics = evaluate(r.test_confusion);
      r.model = PersistedModel{model, split.train.column_names, scaled.state};
      return r;
    });

    const CVResult& best = report.search.best();
    ordered_json fold_acc = ordered_json::array();
    std::size_t skipped = 0;
    for (const auto& f : best.folds) {
      fold_acc.push_back(f.skipped ? ordered_json(nullptr) : ordered_json(f.metrics.accuracy.value));
      skipped += f.skipped ? 1 : 0;
    }
    ordered_json entry;
    entry["family"] = to_string(family);
    entry["grid_size"] = report.search.evaluated.size();
    entry["best_params"] = params_json(best.params);
    entry["cv"] = {{"k", best.k},
                   {"evaluated_folds", best.evaluated_folds},
                   {"skipped_folds", skipped},
                   {"accuracy", summary_json(best.accuracy)},
                   {"precision", summary_json(best.precision)},
                   {"recall", summary_json(best.recall)},
                   {"f1", summary_json(best.f1)},
                   {"fold_accuracy", std::move(fold_acc)}};
    entry["test"] = ordered_json::parse(metrics_to_json(report.test_metrics, report.test_confusion));
    models.push_back(std::move(entry));

    table_rows.push_back({family_label(family), best.accuracy.mean,
                          report.test_metrics.accuracy.value, report.test_metrics.precision.value,
                          report.test_metrics.recall.value, report.test_metrics.f1.value});
    outcome.reports.push_back(std::move(report));
  }

  ordered_json doc;
  doc["ticker"] = config.ticker;
  doc["seed"] = config.seed;
  doc["split"] = {{"mode", to_string(config.split_mode)},
                  {"ratio", config.split_ratio},
                  {"train_rows", outcome.train_rows},
                  {"test_rows", outcome.test_rows}};
  doc["features"] = features.column_names;
  doc["models"] = std::move(models);
  outcome.metrics_json = doc.dump(2) + "\n";
  outcome.table = render_report(outcome.metrics_json);
  return outcome;
}

TrainOutcome cmd_train(const RunConfig& config) {
  validate_config(config);
  std::vector<StageCount> stages;
  std::vector<std::string> warnings;
  FeatureMatrix features;
  if (!config.features_csv.empty()) {
    features = run_stage("load_features", [&] { return parse_feature_csv(read_text_file(config.features_csv)); });
    stages.push_back({"load_features", features.rows(), features.rows(), 0, config.features_csv.string()});
  } else {
    FeatureBuild build = build_features(config);
    features = std::move(build.selected);
    stages = std::move(build.stages);
    warnings = std::move(build.warnings);
  }
  TrainOutcome outcome = train_models(config, features);
  stages.push_back({"split", features.rows(), outcome.train_rows, outcome.test_rows,
                    "dropped = rows held out for testing"});

  write_text_file(config.output_dir / "metrics.json", outcome.metrics_json);
  write_text_file(config.output_dir / "table2.txt", outcome.table);
  for (const auto& r : outcome.reports) {
    write_text_file(config.output_dir / ("model_" + std::string(to_string(r.family)) + ".json"),
                    model_to_json(r.model));
  }
  write_run_report(config, "train", stages, warnings);
  return outcome;
}

std::vector<Prediction> predict_rows(const PersistedModel& model, const FeatureMatrix& input) {
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  std::vector<std::size_t> source(model.feature_names.size());
  for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
    auto idx = input.column_index(model.feature_names[j]);
    if (!idx) {
      missing.push_back(model.feature_names[j]);
    } else {
      source[j] = *idx;
    }
  }
  for (const auto& name : input.column_names) {
    if (std::find(model.feature_names.begin(), model.feature_names.end(), name) ==
        model.feature_names.end()) {
      extra.push_back(name);
    }
  }
  if (!missing.empty() || !extra.empty()) {
    const auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
      return "[" + s + "]";
    };
    throw SchemaError("feature columns do not match the model; missing " + join(missing) +
                      ", extra " + join(extra));
  }
  std::vector<Prediction> out;
  out.reserve(input.rows());
  std::vector<double> row(model.feature_names.size());
  for (std::size_t r = 0; r < input.rows(); ++r) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = input.values(r, source[j]);
    model.scaler.transform_row(row);
    const double p = predict_proba(model.model, row);
    out.push_back({p >= 0.5 ? 1 : 0, p});
  }
  return out;
}

Prediction predict_row(const PersistedModel& model, std::string_view csv_values) {
  const auto cells = split_csv_record(csv_values);
  if (cells.size() != model.feature_names.size()) {
    std::string names;
    for (const auto& n : model.feature_names) names += (names.empty() ? "" : ", ") + n;
    throw SchemaError("model expects " + std::to_string(model.feature_names.size()) +
                      " features (" + names + "), got " + std::to_string(cells.size()));
  }
  std::string csv;
  for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
    csv += (j ? "," : "") + model.feature_names[j];
  }
  csv += "\n" + std::string(csv_values) + "\n";
  return predict_rows(model, parse_feature_csv(csv)).front();
}

std::string predictions_to_csv(const std::vector<Prediction>& predictions) {
  std::string out = "row,label,probability\n";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(predictions[i].label) + "," +
           format_double(predictions[i].probability) + "\n";
  }
  return out;
}

std::string render_report(std::string_view metrics_json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(metrics_json);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics JSON: ") + e.what());
  }
  std::vector<ComparisonRow> rows;
  try {
    for (const auto& m : doc.at("models")) {
      const auto family = parse_model_family(m.at("family").get<std::string>());
      rows.push_back({family ? family_label(*family) : m.at("family").get<std::string>(),
                      m.at("cv").at("accuracy").at("mean").get<double>(),
                      m.at("test").at("accuracy").get<double>(),
                      m.at("test").at("precision").get<double>(),
                      m.at("test").at("recall").get<double>(), m.at("test").at("f1").get<double>()});
    }
    const auto& split = doc.at("split");
    std::string header = "Ticker " + doc.at("ticker").get<std::string>() + ", split " +
                         split.at("mode").get<std::string>() + ", " +
                         std::to_string(split.at("train_rows").get<std::size_t>()) + " train / " +
                         std::to_string(split.at("test_rows").get<std::size_t>()) + " test rows, " +
                         std::to_string(doc.at("models").empty()
                                            ? 0
                                            : doc.at("models")[0].at("cv").at("k").get<std::size_t>()) +
                         "-fold CV\n\n";
    return header + format_comparison_table(rows);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics JSON: ") + e.what());
  }
}

}  // namespace trendcast

// Command-line driver for the trend classification pipeline.
//
//   trendcast build-features --config run.json
//   trendcast train          --config run.json [--seed N] [--split-mode chrono|random]
//   trendcast predict        --model out/model_random_forest.json --input features.csv
//   trendcast report         --out out/

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trendcast/error.hpp"
#include "trendcast/pipeline.hpp"
#include "trendcast/text_io.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ticker;
  std::optional<std::string> split_mode;
  std::optional<std::string> out_dir;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Run configuration (JSON)")->required();
  cmd->add_option("--seed", o.seed, "Master random seed");
  cmd->add_option("--ticker", o.ticker, "Ticker symbol");
  cmd->add_option("--split-mode", o.split_mode, "Train/test split: chrono or random")
      ->check(CLI::IsMember({"chrono", "chronological", "random"}));
  cmd->add_option("--out", o.out_dir, "Output directory");
}

trendcast::RunConfig resolve_config(const Overrides& o) {
  trendcast::RunConfig c = trendcast::load_run_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.ticker) c.ticker = *o.ticker;
  if (o.split_mode) c.split_mode = *trendcast::parse_split_mode(*o.split_mode);
  if (o.out_dir) c.output_dir = *o.out_dir;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Next-day stock trend classification from technical indicators and news sentiment"};
  app.require_subcommand(1);

  Overrides build_opts;
  auto* build = app.add_subcommand("build-features",
                                   "Build the feature matrix, correlation report and run report");
  add_run_flags(build, build_opts);

  Overrides train_opts;
  auto* train = app.add_subcommand("train", "Grid-search, cross-validate and evaluate the models");
  add_run_flags(train, train_opts);

  std::string model_path;
  std::string input_path;
  std::string row_values;
  std::string predict_out;
  auto* predict = app.add_subcommand("predict", "Score feature rows with a saved model");
  predict->add_option("--model", model_path, "model_<family>.json")->required();
  auto* input_opt = predict->add_option("--input", input_path, "Feature CSV (header required)");
  predict->add_option("--row", row_values, "Comma-separated values in the model's feature order")
      ->excludes(input_opt);
  predict->add_option("--out", predict_out, "Write predictions CSV here instead of stdout");

  std::string report_dir = "out";
  auto* report = app.add_subcommand("report", "Print the comparison table from metrics.json");
  report->add_option("--out", report_dir, "Directory holding metrics.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      const auto config = resolve_config(build_opts);
      const auto result = trendcast::cmd_build_features(config);
      for (const auto& s : result.stages) {
        std::cout << s.stage << ": " << s.rows_in << " in, " << s.rows_out << " out, "
                  << s.rows_dropped << " dropped" << (s.note.empty() ? "" : " (" + s.note + ")")
                  << "\n";
      }
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << (config.output_dir / "features.csv").string() << "\n";
    } else if (train->parsed()) {
      const auto config = resolve_config(train_opts);
      const auto outcome = trendcast::cmd_train(config);
      std::cout << outcome.table;
      std::cout << "wrote " << (config.output_dir / "metrics.json").string() << "\n";
    } else if (predict->parsed()) {
      const auto model = trendcast::model_from_json(trendcast::read_text_file(model_path));
      std::vector<trendcast::Prediction> predictions;
      if (!row_values.empty()) {
        predictions.push_back(trendcast::predict_row(model, row_values));
      } else if (!input_path.empty()) {
        const auto input = trendcast::parse_feature_csv(trendcast::read_text_file(input_path));
        predictions = trendcast::predict_rows(model, input);
      } else {
        std::cerr << "predict: one of --input or --row is required\n";
        return 2;
      }
      const std::string csv = trendcast::predictions_to_csv(predictions);
      if (predict_out.empty()) {
        std::cout << csv;
      } else {
        trendcast::write_text_file(predict_out, csv);
      }
    } else if (report->parsed()) {
      const std::filesystem::path dir(report_dir);
      const std::string table =
          trendcast::render_report(trendcast::read_text_file(dir / "metrics.json"));
      trendcast::write_text_file(dir / "table2.txt", table);
      std::cout << table;
    }
  } catch (const trendcast::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const trendcast::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"
#include "trendcast/pipeline.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown config key '" + where + "." + key + "'");
    }
  }
}

template <typename T>
std::vector<T> list_of(const json& obj, const char* key, const std::string& where,
                       std::vector<T> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    if (!it->is_array()) return {it->get<T>()};
    return it->get<std::vector<T>>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return (path.is_absolute() || base.empty() ? path : base / path).lexically_normal();
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config",
                 {"ticker", "seed", "inputs", "output_dir", "indicators", "sentiment", "features",
                  "split", "cv", "models", "grids"});
  RunConfig c;
  try {
    c.ticker = doc.value("ticker", c.ticker);
    c.seed = doc.value("seed", c.seed);
    c.output_dir = resolve(base_dir, doc.value("output_dir", c.output_dir.string()));

    if (auto it = doc.find("inputs"); it != doc.end()) {
      reject_unknown(*it, "inputs",
                     {"prices", "news", "lexicon", "negators", "stopwords", "keywords", "features"});
      c.prices_csv = resolve(base_dir, it->value("prices", ""));
      c.news_jsonl = resolve(base_dir, it->value("news", ""));
      c.lexicon_tsv = resolve(base_dir, it->value("lexicon", ""));
      c.negators_txt = resolve(base_dir, it->value("negators", ""));
      c.stopwords_txt = resolve(base_dir, it->value("stopwords", ""));
      c.keywords_txt = resolve(base_dir, it->value("keywords", ""));
      c.features_csv = resolve(base_dir, it->value("features", ""));
    }
    if (auto it = doc.find("indicators"); it != doc.end()) {
      reject_unknown(*it, "indicators", {"window"});
      c.indicators.window = it->value("window", c.indicators.window);
    }
    if (auto it = doc.find("sentiment"); it != doc.end()) {
      reject_unknown(*it, "sentiment", {"aggregation"});
      const std::string mode = it->value("aggregation", "mean");
      if (mode == "mean") {
        c.aggregation = Aggregation::mean;
      } else if (mode == "sum") {
        c.aggregation = Aggregation::sum;
      } else {
        throw ConfigError("sentiment.aggregation must be 'mean' or 'sum'");
      }
    }
    if (auto it = doc.find("features"); it != doc.end()) {
      reject_unknown(*it, "features", {"drop"});
      c.drop.drop = list_of<std::string>(*it, "drop", "features", c.drop.drop);
    }
    if (auto it = doc.find("split"); it != doc.end()) {
      reject_unknown(*it, "split", {"ratio", "mode"});
      c.split_ratio = it->value("ratio", c.split_ratio);
      auto mode = parse_split_mode(it->value("mode", std::string("chrono")));
      if (!mode) throw ConfigError("split.mode must be 'chrono' or 'random'");
      c.split_mode = *mode;
    }
    if (auto it = doc.find("cv"); it != doc.end()) {
      reject_unknown(*it, "cv", {"folds", "metric"});
      c.cv_folds = it->value("folds", c.cv_folds);
      const std::string metric = it->value("metric", "accuracy");
      if (metric == "accuracy") {
        c.selection_metric = SelectionMetric::accuracy;
      } else if (metric == "precision") {
        c.selection_metric = SelectionMetric::precision;
      } else if (metric == "recall") {
        c.selection_metric = SelectionMetric::recall;
      } else if (metric == "f1") {
        c.selection_metric = SelectionMetric::f1;
      } else {
        throw ConfigError("cv.metric must be accuracy, precision, recall or f1");
      }
    }
    if (auto it = doc.find("models"); it != doc.end()) {
      c.families.clear();
      for (const auto& name : it->get<std::vector<std::string>>()) {
        auto f = parse_model_family(name);
        if (!f) throw ConfigError("unknown model family '" + name + "'");
        if (std::find(c.families.begin(), c.families.end(), *f) == c.families.end()) {
          c.families.push_back(*f);
        }
      }
    }
    if (auto it = doc.find("grids"); it != doc.end()) {
      reject_unknown(*it, "grids", {"logistic_regression", "random_forest", "gradient_boosting"});
      if (auto g = it->find("logistic_regression"); g != it->end()) {
        const std::string w = "grids.logistic_regression";
        reject_unknown(*g, w, {"learning_rate", "l2_penalty", "epochs"});
        auto& lr = c.logreg_grid;
        lr.learning_rate = list_of<double>(*g, "learning_rate", w, lr.learning_rate);
        lr.l2_penalty = list_of<double>(*g, "l2_penalty", w, lr.l2_penalty);
        lr.epochs = list_of<std::size_t>(*g, "epochs", w, lr.epochs);
      }
      if (auto g = it->find("random_forest"); g != it->end()) {
        const std::string w = "grids.random_forest";
        reject_unknown(*g, w,
                       {"n_trees", "max_depth", "features_per_split", "min_samples_leaf",
                        "bootstrap"});
        auto& rf = c.forest_grid;
        rf.n_trees = list_of<std::size_t>(*g, "n_trees", w, rf.n_trees);
        rf.max_depth = list_of<int>(*g, "max_depth", w, rf.max_depth);
        rf.min_samples_leaf = list_of<std::size_t>(*g, "min_samples_leaf", w, rf.min_samples_leaf);
        rf.bootstrap = list_of<bool>(*g, "bootstrap", w, rf.bootstrap);
        if (auto f = g->find("features_per_split"); f != g->end()) {
          rf.features_per_split.clear();
          const json items = f->is_array() ? *f : json::array({*f});
          for (const auto& item : items) {
            const std::string text = item.is_string() ? item.get<std::string>() : item.dump();
            auto fps = FeaturesPerSplit::parse(text);
            if (!fps) throw ConfigError(w + ".features_per_split: bad value '" + text + "'");
            rf.features_per_split.push_back(*fps);
          }
        }
      }
      if (auto g = it->find("gradient_boosting"); g != it->end()) {
        const std::string w = "grids.gradient_boosting";
        reject_unknown(*g, w, {"n_rounds", "shrinkage", "max_depth"});
        auto& gb = c.boosting_grid;
        gb.n_rounds = list_of<std::size_t>(*g, "n_rounds", w, gb.n_rounds);
        gb.shrinkage = list_of<double>(*g, "shrinkage", w, gb.shrinkage);
        gb.max_depth = list_of<int>(*g, "max_depth", w, gb.max_depth);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(text, path.parent_path());
}

void validate_config(const RunConfig& c, bool check_paths) {
  if (c.ticker.empty()) throw ConfigError("ticker is empty");
  if (c.indicators.window < 2) throw ConfigError("indicators.window must be >= 2");
  if (!(c.split_ratio > 0.0 && c.split_ratio < 1.0)) {
    throw ConfigError("split.ratio must lie in (0, 1)");
  }
  if (c.cv_folds < 2) throw ConfigError("cv.folds must be >= 2");
  if (c.families.empty()) throw ConfigError("no model families selected");
  for (auto family : c.families) {
    std::vector<ModelParams> grid;
    switch (family) {
      case ModelFamily::logistic_regression:
        grid = expand_grid(c.logreg_grid);
        break;
      case ModelFamily::random_forest:
        grid = expand_grid(c.forest_grid);
        break;
      case ModelFamily::gradient_boosting:
        grid = expand_grid(c.boosting_grid);
        break;
    }
    if (grid.empty()) {
      throw ConfigError("hyperparameter grid for " + std::string(to_string(family)) + " is empty");
    }
    for (const auto& p : grid) validate_params(p);
  }
  if (!check_paths) return;
  const auto need = [](const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("inputs.") + what + " is not set");
    if (!std::filesystem::exists(p)) {
      throw ConfigError(std::string("inputs.") + what + " does not exist: " + p.string());
    }
  };
  if (!c.features_csv.empty()) {
    need(c.features_csv, "features");
    return;
  }
  need(c.prices_csv, "prices");
  if (!c.news_jsonl.empty()) {
    need(c.news_jsonl, "news");
    need(c.lexicon_tsv, "lexicon");
    need(c.negators_txt, "negators");
    need(c.stopwords_txt, "stopwords");
    need(c.keywords_txt, "keywords");
  }
}

}  // namespace trendcast

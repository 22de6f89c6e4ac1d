#include "trendcast/model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::string_view kFormatTag = "trendcast-model";
constexpr int kFormatVersion = 1;

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    if (n.is_leaf()) {
      nodes.push_back(json{{"value", n.value}});
    } else {
      nodes.push_back(json{{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"value", n.value}});
    }
  }
  return nodes;
}

DecisionTree tree_from_json(const json& j) {
  std::vector<TreeNode> nodes;
  nodes.reserve(j.size());
  for (const auto& jn : j) {
    TreeNode n;
    n.value = jn.at("value").get<double>();
    if (jn.contains("feature")) {
      n.feature = jn.at("feature").get<int>();
      n.threshold = jn.at("threshold").get<double>();
      n.left = jn.at("left").get<std::int32_t>();
      n.right = jn.at("right").get<std::int32_t>();
    }
    nodes.push_back(n);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.is_leaf()) continue;
    const auto in_range = [&](std::int32_t c) {
      return c > static_cast<std::int32_t>(i) && c < static_cast<std::int32_t>(nodes.size());
    };
    if (!in_range(n.left) || !in_range(n.right)) {
      throw FormatError("model JSON: tree node " + std::to_string(i) + " has bad child index");
    }
  }
  if (nodes.empty()) throw FormatError("model JSON: empty tree");
  return DecisionTree(std::move(nodes));
}

json params_to_json(const ModelParams& params) {
  return std::visit(
      overloaded{
          [](const LogRegParams& p) {
            return json{{"learning_rate", p.learning_rate},
                        {"l2_penalty", p.l2_penalty},
                        {"epochs", p.epochs}};
          },
          [](const ForestParams& p) {
            return json{{"n_trees", p.n_trees},
                        {"max_depth", p.max_depth},
                        {"min_samples_leaf", p.min_samples_leaf},
                        {"features_per_split", p.features_per_split.to_string()},
                        {"bootstrap", p.bootstrap}};
          },
          [](const BoostingParams& p) {
            return json{{"n_rounds", p.n_rounds},
                        {"shrinkage", p.shrinkage},
                        {"max_depth", p.max_depth},
                        {"min_samples_leaf", p.min_samples_leaf}};
          },
      },
      params);
}

LogRegParams logreg_params_from_json(const json& j) {
  return {j.at("learning_rate").get<double>(), j.at("l2_penalty").get<double>(),
          j.at("epochs").get<std::size_t>()};
}

ForestParams forest_params_from_json(const json& j) {
  ForestParams p;
  p.n_trees = j.at("n_trees").get<std::size_t>();
  p.max_depth = j.at("max_depth").get<int>();
  p.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
  auto fps = FeaturesPerSplit::parse(j.at("features_per_split").get<std::string>());
  if (!fps) throw FormatError("model JSON: bad features_per_split");
  p.features_per_split = *fps;
  p.bootstrap = j.at("bootstrap").get<bool>();
  return p;
}

BoostingParams boosting_params_from_json(const json& j) {
  return {j.at("n_rounds").get<std::size_t>(), j.at("shrinkage").get<double>(),
          j.at("max_depth").get<int>(), j.at("min_samples_leaf").get<std::size_t>()};
}

}  // namespace

std::string_view to_string(ModelFamily family) noexcept {
  switch (family) {
    case ModelFamily::logistic_regression:
      return "logistic_regression";
    case ModelFamily::random_forest:
      return "random_forest";
    case ModelFamily::gradient_boosting:
      return "gradient_boosting";
  }
  return "unknown";
}

std::optional<ModelFamily> parse_model_family(std::string_view text) noexcept {
  for (auto f : {ModelFamily::logistic_regression, ModelFamily::random_forest,
                 ModelFamily::gradient_boosting}) {
    if (text == to_string(f)) return f;
  }
  if (text == "lr") return ModelFamily::logistic_regression;
  if (text == "rf") return ModelFamily::random_forest;
  if (text == "gbm") return ModelFamily::gradient_boosting;
  return std::nullopt;
}

ModelFamily family_of(const ModelParams& params) noexcept {
  return static_cast<ModelFamily>(params.index());
}

ModelFamily family_of(const TrainedModel& model) noexcept {
  return static_cast<ModelFamily>(model.index());
}

void validate_params(const ModelParams& params) {
  const std::string what = std::string(to_string(family_of(params))) + " (" +
                           describe(params) + "): ";
  std::visit(overloaded{
                 [&](const LogRegParams& p) {
                   if (!(p.learning_rate > 0.0) || !std::isfinite(p.learning_rate)) {
                     throw ConfigError(what + "learning_rate must be positive");
                   }
                   if (!(p.l2_penalty >= 0.0) || !std::isfinite(p.l2_penalty)) {
                     throw ConfigError(what + "l2_penalty must be >= 0");
                   }
                 },
                 [&](const ForestParams& p) {
                   if (p.n_trees == 0) throw ConfigError(what + "n_trees must be >= 1");
                   if (p.max_depth < 0) throw ConfigError(what + "max_depth must be >= 0");
                   if (p.min_samples_leaf == 0) {
                     throw ConfigError(what + "min_samples_leaf must be >= 1");
                   }
                   if (p.features_per_split.kind == FeaturesPerSplit::Kind::fixed &&
                       p.features_per_split.count == 0) {
                     throw ConfigError(what + "features_per_split must be >= 1");
                   }
                 },
                 [&](const BoostingParams& p) {
                   if (!(p.shrinkage > 0.0 && p.shrinkage <= 1.0)) {
                     throw ConfigError(what + "shrinkage must lie in (0, 1]");
                   }
                   if (p.max_depth < 0) throw ConfigError(what + "max_depth must be >= 0");
                   if (p.min_samples_leaf == 0) {
                     throw ConfigError(what + "min_samples_leaf must be >= 1");
                   }
                 },
             },
             params);
}

std::string describe(const ModelParams& params) {
  // nlohmann::json objects iterate in key order, so this is canonical.
  const auto doc = params_to_json(params);
  std::string out;
  for (const auto& [key, value] : doc.items()) {
    if (!out.empty()) out += ' ';
    out += key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return out;
}

std::string hyperparams_to_json(const ModelParams& params) {
  return params_to_json(params).dump();
}

TrainedModel fit_model(const ModelParams& params, const Matrix& x, std::span<const int> y,
                       std::uint64_t seed) {
  return std::visit(overloaded{
                        [&](const LogRegParams& p) -> TrainedModel { return train_logreg(x, y, p); },
                        [&](const ForestParams& p) -> TrainedModel { return train_rf(x, y, p, seed); },
                        [&](const BoostingParams& p) -> TrainedModel { return train_gbm(x, y, p); },
                    },
                    params);
}

double predict_proba(const TrainedModel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return m.predict_proba(x); }, model);
}

int predict(const TrainedModel& model, std::span<const double> x, double threshold) {
  return predict_proba(model, x) >= threshold ? 1 : 0;
}

std::vector<int> predict_all(const TrainedModel& model, const Matrix& x) {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict(model, x.row(i));
  return out;
}

std::string model_to_json(const PersistedModel& persisted) {
  json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kFormatVersion;
  doc["family"] = to_string(family_of(persisted.model));
  doc["feature_names"] = persisted.feature_names;
  doc["scaler"] = json{{"names", persisted.scaler.names},
                       {"min", persisted.scaler.mins},
                       {"max", persisted.scaler.maxs}};
  std::visit(overloaded{
                 [&](const LogRegModel& m) {
                   doc["hyperparams"] = params_to_json(m.params);
                   doc["parameters"] = json{{"weights", m.weights}, {"bias", m.bias}};
                 },
                 [&](const RandomForestModel& m) {
                   doc["hyperparams"] = params_to_json(m.params);
                   json trees = json::array();
                   for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
                   doc["parameters"] = json{{"seed", m.seed}, {"trees", std::move(trees)}};
                 },
                 [&](const GBMModel& m) {
                   doc["hyperparams"] = params_to_json(m.params);
                   json trees = json::array();
                   for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
                   doc["parameters"] =
                       json{{"initial_score", m.initial_score}, {"trees", std::move(trees)}};
                 },
             },
             persisted.model);
  return doc.dump(1) + "\n";
}

PersistedModel model_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormatTag) {
      throw FormatError("model JSON: not a trendcast model document");
    }
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw FormatError("model JSON: unsupported version " + doc.at("version").dump());
    }
    const auto family = parse_model_family(doc.at("family").get<std::string>());
    if (!family) throw FormatError("model JSON: unknown family " + doc.at("family").dump());

    PersistedModel out;
    out.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto& sc = doc.at("scaler");
    out.scaler.names = sc.at("names").get<std::vector<std::string>>();
    out.scaler.mins = sc.at("min").get<std::vector<double>>();
    out.scaler.maxs = sc.at("max").get<std::vector<double>>();
    if (out.scaler.mins.size() != out.scaler.names.size() ||
        out.scaler.maxs.size() != out.scaler.names.size()) {
      throw FormatError("model JSON: scaler arrays disagree in length");
    }
    const auto& hp = doc.at("hyperparams");
    const auto& params = doc.at("parameters");
    switch (*family) {
      case ModelFamily::logistic_regression: {
        LogRegModel m;
        m.params = logreg_params_from_json(hp);
        m.weights = params.at("weights").get<std::vector<double>>();
        m.bias = params.at("bias").get<double>();
        out.model = std::move(m);
        break;
      }
      case ModelFamily::random_forest: {
        RandomForestModel m;
        m.params = forest_params_from_json(hp);
        m.seed = params.at("seed").get<std::uint64_t>();
        for (const auto& t : params.at("trees")) m.trees.push_back(tree_from_json(t));
        if (m.trees.empty()) throw FormatError("model JSON: forest without trees");
        out.model = std::move(m);
        break;
      }
      case ModelFamily::gradient_boosting: {
        GBMModel m;
        m.params = boosting_params_from_json(hp);
        m.initial_score = params.at("initial_score").get<double>();
        for (const auto& t : params.at("trees")) m.trees.push_back(tree_from_json(t));
        out.model = std::move(m);
        break;
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
}

bool operator==(const PersistedModel& a, const PersistedModel& b) {
  return a.model == b.model && a.feature_names == b.feature_names && a.scaler == b.scaler;
}

}  // namespace trendcast

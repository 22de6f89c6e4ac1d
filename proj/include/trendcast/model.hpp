#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trendcast/features.hpp"
#include "trendcast/gradient_boosting.hpp"
#include "trendcast/logistic_regression.hpp"
#include "trendcast/random_forest.hpp"

namespace trendcast {

enum class ModelFamily { logistic_regression, random_forest, gradient_boosting };

std::string_view to_string(ModelFamily family) noexcept;
std::optional<ModelFamily> parse_model_family(std::string_view text) noexcept;

using ModelParams = std::variant<LogRegParams, ForestParams, BoostingParams>;
using TrainedModel = std::variant<LogRegModel, RandomForestModel, GBMModel>;

ModelFamily family_of(const ModelParams& params) noexcept;
ModelFamily family_of(const TrainedModel& model) noexcept;

/// Throws ConfigError for points no model can be trained with (zero trees,
/// non-positive learning rate, negative depth, ...).
void validate_params(const ModelParams& params);

/// Canonical "key=value" rendering, stable across runs; used for task seeds
/// and reports.
std::string describe(const ModelParams& params);

/// Hyperparameters as a JSON object (keys sorted).
std::string hyperparams_to_json(const ModelParams& params);

TrainedModel fit_model(const ModelParams& params, const Matrix& x, std::span<const int> y,
                       std::uint64_t seed);

double predict_proba(const TrainedModel& model, std::span<const double> x);
int predict(const TrainedModel& model, std::span<const double> x, double threshold = 0.5);
std::vector<int> predict_all(const TrainedModel& model, const Matrix& x);

/// A model with everything needed to score raw (unscaled) feature rows.
struct PersistedModel {
  TrainedModel model;
  std::vector<std::string> feature_names;
  ScalerState scaler;
};

/// Self-describing JSON document; model_from_json(model_to_json(m)) == m.
std::string model_to_json(const PersistedModel& model);
/// Throws FormatError on malformed documents.
PersistedModel model_from_json(std::string_view text);

bool operator==(const PersistedModel& a, const PersistedModel& b);

}  // namespace trendcast

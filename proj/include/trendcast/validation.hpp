#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trendcast/features.hpp"
#include "trendcast/metrics.hpp"
#include "trendcast/model.hpp"

namespace trendcast {

struct CVOptions {
  std::size_t k = 10;
  SplitMode mode = SplitMode::chronological;
  std::uint64_t seed = 0;
};

/// Held-out index sets. Chronological mode uses contiguous blocks in row
/// order; random mode shuffles the rows with `seed` first. The first n % k
/// folds hold one extra row. Throws ConfigError when k < 2 and DataError
/// when n < k.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k,
                                                 SplitMode mode, std::uint64_t seed);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  /// Set when the fold's training part held a single class.
  bool skipped = false;
  ConfusionMatrix confusion;
  MetricSet metrics;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 with fewer than 2 folds
};

struct CVResult {
  ModelParams params;
  std::size_t k = 0;
  std::vector<FoldResult> folds;  // always k entries
  std::size_t evaluated_folds = 0;
  MetricSummary accuracy;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
};

/// Fits a scaler and a model on each fold's training part, scores the
/// held-out part. Means are over non-skipped folds. `train` is unscaled.
CVResult kfold_cv(const FeatureMatrix& train, const ModelParams& params,
                  const CVOptions& options);

enum class SelectionMetric { accuracy, precision, recall, f1 };

struct GridSearchResult {
  std::vector<CVResult> evaluated;  // grid order
  std::size_t best_index = 0;

  const CVResult& best() const { return evaluated.at(best_index); }
};

/// Exhaustive search; every (point, fold) pair is an independent task whose
/// model seed is derived from (options.seed, describe(point), fold), so
/// results do not depend on grid order or thread scheduling. Highest mean
/// metric wins; ties go to the earlier point. Throws ConfigError for an empty
/// grid or an invalid point before any training happens.
GridSearchResult grid_search(const FeatureMatrix& train, const std::vector<ModelParams>& grid,
                             const CVOptions& options,
                             SelectionMetric metric = SelectionMetric::accuracy);

/// Single-threaded reference for grid_search; identical result.
GridSearchResult grid_search_serial(const FeatureMatrix& train,
                                    const std::vector<ModelParams>& grid,
                                    const CVOptions& options,
                                    SelectionMetric metric = SelectionMetric::accuracy);

double summary_value(const CVResult& result, SelectionMetric metric) noexcept;

/// Per-family hyperparameter value lists; the grid is their Cartesian product.
struct LogRegGrid {
  std::vector<double> learning_rate{0.01, 0.1};
  std::vector<double> l2_penalty{0.0, 0.01, 0.1};
  std::vector<std::size_t> epochs{500};
};

struct ForestGrid {
  std::vector<std::size_t> n_trees{50, 100, 200};
  std::vector<int> max_depth{4, 6, 10};
  std::vector<FeaturesPerSplit> features_per_split{FeaturesPerSplit::sqrt()};
  std::vector<std::size_t> min_samples_leaf{1};
  std::vector<bool> bootstrap{true};
};

struct BoostingGrid {
  std::vector<std::size_t> n_rounds{100, 300};
  std::vector<double> shrinkage{0.05, 0.1};
  std::vector<int> max_depth{3, 5};
};

/// Expands in declaration order with the last field varying fastest.
std::vector<ModelParams> expand_grid(const LogRegGrid& grid);
std::vector<ModelParams> expand_grid(const ForestGrid& grid);
std::vector<ModelParams> expand_grid(const BoostingGrid& grid);

}  // namespace trendcast

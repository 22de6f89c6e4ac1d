#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trendcast/decision_tree.hpp"
#include "trendcast/matrix.hpp"

namespace trendcast {

struct BoostingParams {
  std::size_t n_rounds = 100;
  double shrinkage = 0.1;
  int max_depth = 3;
  std::size_t min_samples_leaf = 1;

  friend bool operator==(const BoostingParams&, const BoostingParams&) = default;
};

/// Additive log-odds model F(x) = initial_score + shrinkage * sum(tree(x)).
struct GBMModel {
  BoostingParams params;
  double initial_score = 0.0;
  std::vector<DecisionTree> trees;

  /// Log-odds after the first `rounds` trees (all trees by default).
  double decision_function(std::span<const double> x,
                           std::size_t rounds = static_cast<std::size_t>(-1)) const;
  double predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x, double threshold = 0.5) const {
    return predict_proba(x) >= threshold ? 1 : 0;
  }

  friend bool operator==(const GBMModel&, const GBMModel&) = default;
};

/// Boosting on logistic loss. Starts from the prior log-odds; each round fits
/// a regression tree to y - p with Newton leaf values sum(y - p) / sum(p(1-p)).
/// Throws DataError if y holds a single class.
GBMModel train_gbm(const Matrix& x, std::span<const int> y, const BoostingParams& params);

/// Mean logistic loss on (x, y) after 0, 1, ..., n_rounds trees.
std::vector<double> gbm_loss_history(const GBMModel& model, const Matrix& x,
                                     std::span<const int> y);

}  // namespace trendcast

#include "trendcast/gradient_boosting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trendcast/error.hpp"
#include "trendcast/logistic_regression.hpp"

namespace trendcast {

namespace {

double softplus(double z) noexcept {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double mean_logistic_loss(std::span<const double> scores, std::span<const int> y) {
  double loss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    loss += y[i] == 1 ? softplus(-scores[i]) : softplus(scores[i]);
  }
  return loss / static_cast<double>(y.size());
}

}  // namespace

double GBMModel::decision_function(std::span<const double> x, std::size_t rounds) const {
  double f = initial_score;
  const std::size_t used = std::min(rounds, trees.size());
  for (std::size_t t = 0; t < used; ++t) f += params.shrinkage * trees[t].predict_value(x);
  return f;
}

double GBMModel::predict_proba(std::span<const double> x) const {
  return sigmoid(decision_function(x));
}

GBMModel train_gbm(const Matrix& x, std::span<const int> y, const BoostingParams& params) {
  const std::size_t n = x.rows();
  if (n == 0 || y.size() != n) throw DataError("gradient boosting: empty or mismatched data");
  std::size_t positives = 0;
  for (int label : y) {
    if (label != 0 && label != 1) throw DataError("gradient boosting: labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == n) {
    throw DataError("gradient boosting needs both classes; got " + std::to_string(positives) +
                    " Up and " + std::to_string(n - positives) + " Down");
  }

  GBMModel model;
  model.params = params;
  const double prior = static_cast<double>(positives) / static_cast<double>(n);
  model.initial_score = std::log(prior / (1.0 - prior));
  model.trees.reserve(params.n_rounds);

  const TreeParams tree_params{params.max_depth, params.min_samples_leaf};
  std::vector<double> score(n, model.initial_score);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);
  for (std::size_t round = 0; round < params.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(score[i]);
      residual[i] = static_cast<double>(y[i]) - p;
      hessian[i] = p * (1.0 - p);
    }
    DecisionTree tree = train_regression_tree(x, residual, hessian, tree_params);
    for (std::size_t i = 0; i < n; ++i) {
      score[i] += params.shrinkage * tree.predict_value(x.row(i));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::vector<double> gbm_loss_history(const GBMModel& model, const Matrix& x,
                                     std::span<const int> y) {
  std::vector<double> score(x.rows(), model.initial_score);
  std::vector<double> history;
  history.reserve(model.trees.size() + 1);
  history.push_back(mean_logistic_loss(score, y));
  for (const auto& tree : model.trees) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      score[i] += model.params.shrinkage * tree.predict_value(x.row(i));
    }
    history.push_back(mean_logistic_loss(score, y));
  }
  return history;
}

}  // namespace trendcast

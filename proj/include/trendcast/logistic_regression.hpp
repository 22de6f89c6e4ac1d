#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trendcast/matrix.hpp"

namespace trendcast {

struct LogRegParams {
  double learning_rate = 0.1;
  double l2_penalty = 0.0;
  std::size_t epochs = 500;

  friend bool operator==(const LogRegParams&, const LogRegParams&) = default;
};

struct LogRegModel {
  LogRegParams params;
  std::vector<double> weights;
  double bias = 0.0;

  /// w.x + b. Throws SchemaError on dimension mismatch.
  double decision_function(std::span<const double> x) const;
  double predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x, double threshold = 0.5) const {
    return predict_proba(x) >= threshold ? 1 : 0;
  }

  friend bool operator==(const LogRegModel&, const LogRegModel&) = default;
};

double sigmoid(double z) noexcept;

/// Mean cross-entropy plus (l2 / 2) * |w|^2; the bias is not penalized.
double logreg_loss(std::span<const double> weights, double bias, const Matrix& x,
                   std::span<const int> y, double l2_penalty);

struct LogRegGradient {
  std::vector<double> weights;
  double bias = 0.0;
};

LogRegGradient logreg_gradient(std::span<const double> weights, double bias,
                               const Matrix& x, std::span<const int> y,
                               double l2_penalty);

/// Full-batch gradient descent from zero. Deterministic.
/// Throws DataError on zero rows, non-finite features or labels outside {0,1}.
LogRegModel train_logreg(const Matrix& x, std::span<const int> y,
                         const LogRegParams& params);

}  // namespace trendcast

#include "trendcast/logistic_regression.hpp"

#include <cmath>
#include <string>

#include "trendcast/error.hpp"

namespace trendcast {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) noexcept {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double dot(std::span<const double> w, std::span<const double> x) noexcept {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
  return s;
}

void check_training_data(const Matrix& x, std::span<const int> y) {
  if (x.rows() == 0) throw DataError("logistic regression: no training rows");
  if (y.size() != x.rows()) {
    throw DataError("logistic regression: " + std::to_string(x.rows()) + " rows but " +
                    std::to_string(y.size()) + " labels");
  }
  for (double v : x.data()) {
    if (!std::isfinite(v)) throw DataError("logistic regression: non-finite feature value");
  }
  for (int label : y) {
    if (label != 0 && label != 1) throw DataError("logistic regression: labels must be 0 or 1");
  }
}

}  // namespace

double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogRegModel::decision_function(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw SchemaError("logistic regression expects " + std::to_string(weights.size()) +
                      " features, got " + std::to_string(x.size()));
  }
  return dot(weights, x) + bias;
}

double LogRegModel::predict_proba(std::span<const double> x) const {
  return sigmoid(decision_function(x));
}

double logreg_loss(std::span<const double> weights, double bias, const Matrix& x,
                   std::span<const int> y, double l2_penalty) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = dot(weights, x.row(i)) + bias;
    // -[y log p + (1-y) log(1-p)] with p = sigmoid(z)
    loss += y[i] == 1 ? softplus(-z) : softplus(z);
  }
  loss /= static_cast<double>(x.rows());
  double norm2 = 0.0;
  for (double w : weights) norm2 += w * w;
  return loss + 0.5 * l2_penalty * norm2;
}

LogRegGradient logreg_gradient(std::span<const double> weights, double bias, const Matrix& x,
                               std::span<const int> y, double l2_penalty) {
  LogRegGradient g;
  g.weights.assign(weights.size(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const double err = sigmoid(dot(weights, row) + bias) - static_cast<double>(y[i]);
    for (std::size_t j = 0; j < weights.size(); ++j) g.weights[j] += err * row[j];
    g.bias += err;
  }
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    g.weights[j] = g.weights[j] * inv_n + l2_penalty * weights[j];
  }
  g.bias *= inv_n;
  return g;
}

LogRegModel train_logreg(const Matrix& x, std::span<const int> y, const LogRegParams& params) {
  check_training_data(x, y);
  LogRegModel model;
  model.params = params;
  model.weights.assign(x.cols(), 0.0);
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    const auto g = logreg_gradient(model.weights, model.bias, x, y, params.l2_penalty);
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
      model.weights[j] -= params.learning_rate * g.weights[j];
    }
    model.bias -= params.learning_rate * g.bias;
  }
  return model;
}

}  // namespace trendcast

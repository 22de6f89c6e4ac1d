#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trendcast/decision_tree.hpp"
#include "trendcast/matrix.hpp"

namespace trendcast {

/// Number of candidate features examined at each split.
struct FeaturesPerSplit {
  enum class Kind { sqrt, all, fixed };
  Kind kind = Kind::sqrt;
  std::size_t count = 0;  // used when kind == fixed

  static FeaturesPerSplit sqrt() { return {Kind::sqrt, 0}; }
  static FeaturesPerSplit all() { return {Kind::all, 0}; }
  static FeaturesPerSplit fixed(std::size_t n) { return {Kind::fixed, n}; }

  /// ceil(sqrt(d)) for sqrt, clamped to [1, d].
  std::size_t resolve(std::size_t n_features) const noexcept;

  std::string to_string() const;
  /// "sqrt", "all" or a positive integer.
  static std::optional<FeaturesPerSplit> parse(std::string_view text);

  friend bool operator==(const FeaturesPerSplit&, const FeaturesPerSplit&) = default;
};

struct ForestParams {
  std::size_t n_trees = 100;
  int max_depth = 6;
  std::size_t min_samples_leaf = 1;
  FeaturesPerSplit features_per_split = FeaturesPerSplit::sqrt();
  bool bootstrap = true;

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

struct RandomForestModel {
  ForestParams params;
  std::uint64_t seed = 0;
  std::vector<DecisionTree> trees;

  /// Fraction of trees voting Up.
  double predict_proba(std::span<const double> x) const;
  /// Majority vote; an even split goes to Up.
  int predict(std::span<const double> x, double threshold = 0.5) const {
    return predict_proba(x) >= threshold ? 1 : 0;
  }

  friend bool operator==(const RandomForestModel&, const RandomForestModel&) = default;
};

/// Bagged CART ensemble. Tree t draws from its own stream seeded by
/// derive_seed(seed, t), so the model depends only on (data, params, seed).
/// Throws ConfigError when n_trees == 0.
RandomForestModel train_rf(const Matrix& x, std::span<const int> y,
                           const ForestParams& params, std::uint64_t seed);

}  // namespace trendcast

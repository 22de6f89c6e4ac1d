#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trendcast/matrix.hpp"
#include "trendcast/random.hpp"

namespace trendcast {

struct TreeParams {
  int max_depth = 5;
  std::size_t min_samples_leaf = 1;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

enum class TreeTask { classification, regression };

/// Flat node storage. Internal nodes send x[feature] <= threshold left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  /// Leaf output: class-1 probability or regression value.
  double value = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  /// Leaf value reached by x.
  double predict_value(std::span<const double> x) const;
  /// Classification trees only: 1 iff leaf probability >= 0.5.
  int predict(std::span<const double> x) const { return predict_value(x) >= 0.5 ? 1 : 0; }

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const noexcept;
  int depth() const noexcept;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

private:
  std::vector<TreeNode> nodes_;
};

/// Controls per-node feature subsampling. With `per_split` >= feature count
/// every feature is considered and `rng` is never touched.
struct FeatureSampling {
  std::size_t per_split = static_cast<std::size_t>(-1);
  Rng* rng = nullptr;
};

/// CART on all rows. Classification uses Gini impurity with leaf value equal
/// to the class-1 fraction; the target is y. Split candidates are midpoints
/// between consecutive distinct values; ties go to the lowest feature index,
/// then the lowest threshold. Nodes stop splitting at max_depth, when pure,
/// or when no split leaves min_samples_leaf rows on both sides.
DecisionTree train_tree(const Matrix& x, std::span<const int> y, const TreeParams& params);

/// Classification tree over a sample of row indices; repeated indices count
/// once per occurrence (bootstrap samples).
DecisionTree train_classification_tree(const Matrix& x, std::span<const int> y,
                                       std::span<const std::size_t> sample,
                                       const TreeParams& params,
                                       FeatureSampling sampling = {});

/// Variance-reduction tree on real targets. If `hessians` is non-empty each
/// leaf holds sum(target) / sum(hessian) (a Newton step), otherwise the mean.
DecisionTree train_regression_tree(const Matrix& x, std::span<const double> targets,
                                   std::span<const double> hessians,
                                   const TreeParams& params);

}  // namespace trendcast

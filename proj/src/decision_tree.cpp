#include "trendcast/decision_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace trendcast {

double DecisionTree::predict_value(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                       : n.right);
  }
  return nodes_[i].value;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int DecisionTree::depth() const noexcept {
  if (nodes_.empty()) return 0;
  std::vector<int> d(nodes_.size(), 0);
  int deepest = 0;
  // Children are always stored after their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) continue;
    d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
    d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    deepest = std::max(deepest, d[i] + 1);
  }
  return deepest;
}

namespace {

// Greedy CART over presorted per-feature index lists. Each node owns the same
// [begin, end) range in every list; a split stably partitions all lists, so
// each stays sorted by its feature without re-sorting.
class TreeBuilder {
public:
  TreeBuilder(const Matrix& x, TreeTask task, std::span<const double> target,
              std::span<const double> hessian, const TreeParams& params,
              FeatureSampling sampling)
      : x_(x),
        task_(task),
        target_(target),
        hessian_(hessian),
        params_(params),
        sampling_(sampling),
        min_leaf_(std::max<std::size_t>(1, params.min_samples_leaf)) {}

  DecisionTree build(std::span<const std::size_t> sample) {
    const std::size_t d = x_.cols();
    base_.assign(sample.begin(), sample.end());
    order_.assign(d, base_);
    for (std::size_t f = 0; f < d; ++f) {
      std::stable_sort(order_[f].begin(), order_[f].end(),
                       [&](std::size_t a, std::size_t b) { return x_(a, f) < x_(b, f); });
    }
    scratch_.resize(sample.size());
    all_features_.resize(d);
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
    grow(0, sample.size(), 0);
    return DecisionTree(std::move(nodes_));
  }

private:
  struct Split {
    double score = std::numeric_limits<double>::infinity();
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left_count = 0;
    bool found = false;
  };

  std::span<const std::size_t> node_rows(std::size_t begin, std::size_t end) const {
    return std::span<const std::size_t>(order_.empty() ? base_ : order_[0])
        .subspan(begin, end - begin);
  }

  double leaf_value(std::span<const std::size_t> rows) const {
    double sum = 0.0;
    for (std::size_t r : rows) sum += target_[r];
    if (task_ == TreeTask::classification || hessian_.empty()) {
      return sum / static_cast<double>(rows.size());
    }
    double h = 0.0;
    for (std::size_t r : rows) h += hessian_[r];
    return h > 0.0 ? sum / h : 0.0;
  }

  bool is_pure(std::span<const std::size_t> rows) const {
    const double first = target_[rows.front()];
    return std::all_of(rows.begin(), rows.end(),
                       [&](std::size_t r) { return target_[r] == first; });
  }

  std::vector<std::size_t> candidate_features() {
    const std::size_t d = x_.cols();
    if (sampling_.rng == nullptr || sampling_.per_split >= d) return all_features_;
    std::vector<std::size_t> pool = all_features_;
    const std::size_t k = std::max<std::size_t>(1, sampling_.per_split);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + sampling_.rng->uniform_below(d - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  // Lower is better. Classification: sum over children of pos*neg/n, which is
  // half the count-weighted Gini impurity. Regression: negative explained
  // sum of squares.
  double split_score(double left_sum, std::size_t nl, double total_sum, std::size_t n) const {
    const double l = static_cast<double>(nl);
    const double r = static_cast<double>(n - nl);
    const double right_sum = total_sum - left_sum;
    if (task_ == TreeTask::classification) {
      return left_sum * (l - left_sum) / l + right_sum * (r - right_sum) / r;
    }
    return -(left_sum * left_sum / l + right_sum * right_sum / r);
  }

  Split find_split(std::size_t begin, std::size_t end) {
    const std::size_t n = end - begin;
    double total = 0.0;
    for (std::size_t r : node_rows(begin, end)) total += target_[r];

    Split best;
    for (std::size_t f : candidate_features()) {
      const auto& ord = order_[f];
      double left_sum = 0.0;
      for (std::size_t i = begin; i + 1 < end; ++i) {
        left_sum += target_[ord[i]];
        const double v = x_(ord[i], f);
        const double next = x_(ord[i + 1], f);
        if (v == next) continue;
        const std::size_t nl = i - begin + 1;
        if (nl < min_leaf_ || n - nl < min_leaf_) continue;
        const double score = split_score(left_sum, nl, total, n);
        if (score < best.score) {
          double mid = v + (next - v) / 2.0;
          if (!(mid < next)) mid = v;
          best = {score, f, mid, nl, true};
        }
      }
    }
    return best;
  }

  void partition(std::size_t begin, std::size_t end, const Split& split) {
    for (auto& ord : order_) {
      std::size_t left = begin;
      std::size_t right = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t r = ord[i];
        if (x_(r, split.feature) <= split.threshold) {
          ord[left++] = r;
        } else {
          scratch_[right++] = r;
        }
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(right),
                ord.begin() + static_cast<std::ptrdiff_t>(left));
    }
  }

  std::int32_t grow(std::size_t begin, std::size_t end, int depth) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (begin == end) return id;  // empty sample: a zero leaf
    const auto rows = node_rows(begin, end);
    nodes_[id].value = leaf_value(rows);

    if (depth >= params_.max_depth || end - begin < 2 * min_leaf_ || is_pure(rows)) return id;
    const Split split = find_split(begin, end);
    if (!split.found) return id;

    partition(begin, end, split);
    const std::size_t mid = begin + split.left_count;
    nodes_[id].feature = static_cast<int>(split.feature);
    nodes_[id].threshold = split.threshold;
    const std::int32_t left = grow(begin, mid, depth + 1);
    const std::int32_t right = grow(mid, end, depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  const Matrix& x_;
  TreeTask task_;
  std::span<const double> target_;
  std::span<const double> hessian_;
  TreeParams params_;
  FeatureSampling sampling_;
  std::size_t min_leaf_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> scratch_;
  std::vector<std::size_t> all_features_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree train_classification_tree(const Matrix& x, std::span<const int> y,
                                       std::span<const std::size_t> sample,
                                       const TreeParams& params, FeatureSampling sampling) {
  std::vector<double> target(y.begin(), y.end());
  return TreeBuilder(x, TreeTask::classification, target, {}, params, sampling).build(sample);
}

DecisionTree train_tree(const Matrix& x, std::span<const int> y, const TreeParams& params) {
  std::vector<std::size_t> all(x.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return train_classification_tree(x, y, all, params);
}

DecisionTree train_regression_tree(const Matrix& x, std::span<const double> targets,
                                   std::span<const double> hessians,
                                   const TreeParams& params) {
  std::vector<std::size_t> all(x.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return TreeBuilder(x, TreeTask::regression, targets, hessians, params, {}).build(all);
}

}  // namespace trendcast

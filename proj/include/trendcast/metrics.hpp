#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trendcast {

/// Binary confusion counts with Up (1) as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws DataError on length mismatch or labels outside {0, 1}.
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

/// A ratio metric; a zero denominator yields value 0 with `degenerate` set.
struct Metric {
  double value = 0.0;
  bool degenerate = false;
};

Metric accuracy(const ConfusionMatrix& cm) noexcept;
Metric precision(const ConfusionMatrix& cm) noexcept;
Metric recall(const ConfusionMatrix& cm) noexcept;
/// Harmonic mean of precision and recall.
Metric f1(const ConfusionMatrix& cm) noexcept;

struct MetricSet {
  Metric accuracy;
  Metric precision;
  Metric recall;
  Metric f1;
};

MetricSet evaluate(const ConfusionMatrix& cm) noexcept;

/// {"accuracy": .., "precision": .., "recall": .., "f1": .., "tp": .., ...,
/// "degenerate": ["precision", ...]}
std::string metrics_to_json(const MetricSet& m, const ConfusionMatrix& cm);

/// One line of the model comparison table.
struct ComparisonRow {
  std::string model;
  double cv_accuracy = 0.0;
  double test_accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Fixed-width text table, one row per model.
std::string format_comparison_table(const std::vector<ComparisonRow>& rows);

}  // namespace trendcast

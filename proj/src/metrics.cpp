#include "trendcast/metrics.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"

namespace trendcast {

namespace {

Metric ratio(std::size_t num, std::size_t den) noexcept {
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("confusion: " + std::to_string(y_true.size()) + " labels vs " +
                    std::to_string(y_pred.size()) + " predictions");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw DataError("confusion: labels must be 0 or 1 (index " + std::to_string(i) + ")");
    }
    if (t == 1) {
      (p == 1 ? cm.tp : cm.fn) += 1;
    } else {
      (p == 1 ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

Metric accuracy(const ConfusionMatrix& cm) noexcept { return ratio(cm.tp + cm.tn, cm.total()); }
Metric precision(const ConfusionMatrix& cm) noexcept { return ratio(cm.tp, cm.tp + cm.fp); }
Metric recall(const ConfusionMatrix& cm) noexcept { return ratio(cm.tp, cm.tp + cm.fn); }

Metric f1(const ConfusionMatrix& cm) noexcept {
  const Metric p = precision(cm);
  const Metric r = recall(cm);
  const double denom = p.value + r.value;
  if (denom == 0.0) return {0.0, true};
  return {2.0 * p.value * r.value / denom, false};
}

MetricSet evaluate(const ConfusionMatrix& cm) noexcept {
  return {accuracy(cm), precision(cm), recall(cm), f1(cm)};
}

std::string metrics_to_json(const MetricSet& m, const ConfusionMatrix& cm) {
  nlohmann::ordered_json j;
  j["accuracy"] = m.accuracy.value;
  j["precision"] = m.precision.value;
  j["recall"] = m.recall.value;
  j["f1"] = m.f1.value;
  j["tp"] = cm.tp;
  j["fp"] = cm.fp;
  j["tn"] = cm.tn;
  j["fn"] = cm.fn;
  auto degenerate = nlohmann::ordered_json::array();
  if (m.accuracy.degenerate) degenerate.push_back("accuracy");
  if (m.precision.degenerate) degenerate.push_back("precision");
  if (m.recall.degenerate) degenerate.push_back("recall");
  if (m.f1.degenerate) degenerate.push_back("f1");
  j["degenerate"] = std::move(degenerate);
  return j.dump();
}

std::string format_comparison_table(const std::vector<ComparisonRow>& rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %11s %13s %10s %8s %8s\n", "Model", "CV Accuracy",
                "Test Accuracy", "Precision", "Recall", "F1");
  out += line;
  out += std::string(77, '-') + "\n";
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %11.4f %13.4f %10.4f %8.4f %8.4f\n",
                  r.model.c_str(), r.cv_accuracy, r.test_accuracy, r.precision, r.recall, r.f1);
    out += line;
  }
  return out;
}

}  // namespace trendcast

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trendcast/date.hpp"
#include "trendcast/indicators.hpp"
#include "trendcast/matrix.hpp"
#include "trendcast/sentiment.hpp"

namespace trendcast {

namespace column {
inline constexpr std::string_view open = "Open";
inline constexpr std::string_view high = "High";
inline constexpr std::string_view low = "Low";
inline constexpr std::string_view close = "Close";
inline constexpr std::string_view adj_close = "AdjClose";
inline constexpr std::string_view volume = "Volume";
inline constexpr std::string_view sma = "SMA";
inline constexpr std::string_view rsi = "RSI";
inline constexpr std::string_view pct_k = "%K";
inline constexpr std::string_view sentiment = "Sentiment";
inline constexpr std::string_view today_trend = "TodayTrend";
inline constexpr std::string_view label = "TomorrowTrend";
inline constexpr std::string_view date = "Date";
}  // namespace column

/// Feature rows with binary labels. `dates` is metadata and never a feature.
struct FeatureMatrix {
  std::vector<std::string> column_names;
  Matrix values;
  std::vector<int> labels;
  std::vector<Date> dates;

  std::size_t rows() const noexcept { return values.rows(); }
  std::size_t cols() const noexcept { return column_names.size(); }

  std::optional<std::size_t> column_index(std::string_view name) const;

  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

  /// Throws SchemaError if row/label/date/column counts disagree.
  void check_shape() const;
};

struct JoinOptions {
  /// Also emit Open, Low and AdjClose ahead of selection (for the
  /// correlation report).
  bool include_price_block = false;
};

/// Left join of indicator rows with daily sentiment on date. Days without
/// sentiment get 0; sentiment on dates with no indicator row is ignored.
/// Default columns: High, Close, Volume, SMA, RSI, %K, Sentiment, TodayTrend.
FeatureMatrix join_features(const std::vector<IndicatorRow>& rows,
                            const std::vector<DailySentiment>& sentiment,
                            const JoinOptions& options = {});

/// Pairwise Pearson coefficients. Entries involving a constant column are
/// undefined (nullopt), including that column's diagonal.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::optional<double>> values;  // row-major, names.size()^2

  std::optional<double> at(std::size_t i, std::size_t j) const {
    return values[i * names.size() + j];
  }

  /// Undefined entries are written as "NA".
  std::string to_csv() const;
  /// {"A": {"B": 0.93, ...}, ...}; undefined entries are null.
  std::string to_json() const;
};

/// Throws DataError with fewer than two rows.
CorrelationMatrix pearson_matrix(const FeatureMatrix& m);

struct DropPolicy {
  std::vector<std::string> drop{"Open", "Low", "AdjClose"};
};

struct SelectionResult {
  FeatureMatrix matrix;
  std::vector<std::string> warnings;  // one per requested column that was absent
};

SelectionResult select_features(const FeatureMatrix& m, const DropPolicy& policy = {});

/// Per-column train min/max; maps to [-1, 1].
struct ScalerState {
  std::vector<std::string> names;
  std::vector<double> mins;
  std::vector<double> maxs;

  double scale(std::size_t col, double x) const noexcept;
  void transform_row(std::span<double> row) const noexcept;
  /// Throws SchemaError if column names differ from the fitted names.
  FeatureMatrix transform(const FeatureMatrix& m) const;

  friend bool operator==(const ScalerState&, const ScalerState&) = default;
};

/// Throws DataError on an empty matrix.
ScalerState fit_min_max(const FeatureMatrix& train);

struct ScaledMatrix {
  FeatureMatrix matrix;
  ScalerState state;
};

/// Fits on `train` only and applies to `apply_to`. Values outside the train
/// range are not clamped; constant train columns map to 0.
ScaledMatrix min_max_scale(const FeatureMatrix& train, const FeatureMatrix& apply_to);

enum class SplitMode { chronological, random };

std::string_view to_string(SplitMode mode) noexcept;
/// Accepts "chrono", "chronological" and "random".
std::optional<SplitMode> parse_split_mode(std::string_view text) noexcept;

struct TrainTestSplit {
  FeatureMatrix train;
  FeatureMatrix test;
};

/// First ceil(ratio * n) rows go to train. In random mode the rows are
/// shuffled with `seed` first. Throws ConfigError for ratio outside (0, 1)
/// and DataError if either side would be empty.
TrainTestSplit split_train_test(const FeatureMatrix& m, double ratio = 0.8,
                                SplitMode mode = SplitMode::chronological,
                                std::uint64_t seed = 0);

/// Date, feature columns..., TomorrowTrend.
std::string to_feature_csv(const FeatureMatrix& m);

/// Inverse of to_feature_csv. The Date and TomorrowTrend columns are
/// optional; when absent, dates are left default and labels are zero.
FeatureMatrix parse_feature_csv(std::string_view text);

}  // namespace trendcast

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trendcast/market_data.hpp"

namespace trendcast {

enum class TrendLabel : std::uint8_t { Down = 0, Up = 1 };

constexpr int encode(TrendLabel t) noexcept { return static_cast<int>(t); }
constexpr TrendLabel decode_trend(int v) noexcept {
  return v != 0 ? TrendLabel::Up : TrendLabel::Down;
}

/// Window lengths for the windowed indicators.
struct IndicatorParams {
  std::size_t window = 14;
};

/// Bar fields carried forward plus the derived indicators for one day.
struct IndicatorRow {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double adj_close = 0.0;
  std::int64_t volume = 0;
  double sma = 0.0;
  double rsi = 0.0;
  double pct_k = 0.0;
  TrendLabel today_trend = TrendLabel::Up;
  TrendLabel tomorrow_trend = TrendLabel::Up;

  friend bool operator==(const IndicatorRow&, const IndicatorRow&) = default;
};

/// Up iff close - open >= 0.
TrendLabel today_trend(const Bar& bar) noexcept;

/// Up iff close[i+1] - close[i] >= 0. Throws NoLabelError when i is the last bar.
TrendLabel tomorrow_trend(const BarSeries& series, std::size_t i);

/// Mean close over bars i-n+1 .. i. Throws WarmupError when i < n-1.
double sma(const BarSeries& series, std::size_t i, std::size_t n = 14);

/// Relative strength over the last n close-to-close changes using simple
/// means of gains and losses. Flat window -> 50, no losses -> 100, no gains
/// -> 0. Throws WarmupError when i < n.
double rsi(const BarSeries& series, std::size_t i, std::size_t n = 14);

/// Stochastic %K: position of close[i] within the window's low/high range,
/// in [0, 100]; a flat range gives 50. Throws WarmupError when i < n-1.
double pct_k(const BarSeries& series, std::size_t i, std::size_t n = 14);

/// Smallest series length for which build_indicator_frame yields a row.
constexpr std::size_t min_series_length(const IndicatorParams& p) noexcept {
  return p.window + 2;
}

/// One row per index i with window <= i < len-1, ascending by date.
/// Throws WarmupError if the series is shorter than min_series_length.
std::vector<IndicatorRow> build_indicator_frame(const BarSeries& series,
                                                const IndicatorParams& params = {});

/// Single-threaded reference; bit-identical to build_indicator_frame.
std::vector<IndicatorRow> build_indicator_frame_serial(const BarSeries& series,
                                                       const IndicatorParams& params = {});

}  // namespace trendcast

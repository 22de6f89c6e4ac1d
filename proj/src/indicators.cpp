#include "trendcast/indicators.hpp"

#include <algorithm>
#include <string>

#include "trendcast/error.hpp"

namespace trendcast {

namespace {

void require_index(const BarSeries& s, std::size_t i) {
  if (i >= s.size()) {
    throw std::out_of_range("bar index " + std::to_string(i) + " outside series of " +
                            std::to_string(s.size()));
  }
}

void require_history(const char* name, std::size_t i, std::size_t needed) {
  if (i < needed) {
    throw WarmupError(std::string(name) + " at index " + std::to_string(i) + " needs index >= " +
                      std::to_string(needed));
  }
}

void require_window(std::size_t n) {
  if (n < 2) throw ConfigError("indicator window must be >= 2");
}

IndicatorRow make_row(const BarSeries& s, std::size_t i, std::size_t n) {
  const Bar& b = s[i];
  IndicatorRow row;
  row.date = b.date;
  row.open = b.open;
  row.high = b.high;
  row.low = b.low;
  row.close = b.close;
  row.adj_close = b.adj_close;
  row.volume = b.volume;
  row.sma = sma(s, i, n);
  row.rsi = rsi(s, i, n);
  row.pct_k = pct_k(s, i, n);
  row.today_trend = today_trend(b);
  row.tomorrow_trend = tomorrow_trend(s, i);
  return row;
}

void check_frame_length(const BarSeries& s, const IndicatorParams& p) {
  require_window(p.window);
  if (s.size() < min_series_length(p)) {
    throw WarmupError("series of " + std::to_string(s.size()) + " bars is too short; need >= " +
                      std::to_string(min_series_length(p)) + " for window " +
                      std::to_string(p.window));
  }
}

}  // namespace

TrendLabel today_trend(const Bar& bar) noexcept {
  return bar.close - bar.open >= 0.0 ? TrendLabel::Up : TrendLabel::Down;
}

TrendLabel tomorrow_trend(const BarSeries& series, std::size_t i) {
  require_index(series, i);
  if (i + 1 >= series.size()) {
    throw NoLabelError("no bar after index " + std::to_string(i) + " to label tomorrow's trend");
  }
  return series[i + 1].close - series[i].close >= 0.0 ? TrendLabel::Up : TrendLabel::Down;
}

double sma(const BarSeries& series, std::size_t i, std::size_t n) {
  require_index(series, i);
  require_window(n);
  require_history("SMA", i, n - 1);
  double sum = 0.0;
  for (std::size_t t = i + 1 - n; t <= i; ++t) sum += series[t].close;
  return sum / static_cast<double>(n);
}

double rsi(const BarSeries& series, std::size_t i, std::size_t n) {
  require_index(series, i);
  require_window(n);
  require_history("RSI", i, n);
  double gains = 0.0;
  double losses = 0.0;
  for (std::size_t t = i + 1 - n; t <= i; ++t) {
    const double change = series[t].close - series[t - 1].close;
    if (change > 0) {
      gains += change;
    } else {
      losses -= change;
    }
  }
  if (gains == 0.0 && losses == 0.0) return 50.0;
  if (losses == 0.0) return 100.0;
  if (gains == 0.0) return 0.0;
  const double avg_up = gains / static_cast<double>(n);
  const double avg_down = losses / static_cast<double>(n);
  return 100.0 - 100.0 / (1.0 + avg_up / avg_down);
}

double pct_k(const BarSeries& series, std::size_t i, std::size_t n) {
  require_index(series, i);
  require_window(n);
  require_history("%K", i, n - 1);
  double lowest = series[i].low;
  double highest = series[i].high;
  for (std::size_t t = i + 1 - n; t <= i; ++t) {
    lowest = std::min(lowest, series[t].low);
    highest = std::max(highest, series[t].high);
  }
  if (highest == lowest) return 50.0;
  return 100.0 * (series[i].close - lowest) / (highest - lowest);
}

std::vector<IndicatorRow> build_indicator_frame(const BarSeries& series,
                                                const IndicatorParams& params) {
  check_frame_length(series, params);
  const std::size_t first = params.window;
  const std::size_t count = series.size() - 1 - first;
  std::vector<IndicatorRow> rows(count);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    rows[r] = make_row(series, first + static_cast<std::size_t>(r), params.window);
  }
  return rows;
}

std::vector<IndicatorRow> build_indicator_frame_serial(const BarSeries& series,
                                                       const IndicatorParams& params) {
  check_frame_length(series, params);
  std::vector<IndicatorRow> rows;
  rows.reserve(series.size() - 1 - params.window);
  for (std::size_t i = params.window; i + 1 < series.size(); ++i) {
    rows.push_back(make_row(series, i, params.window));
  }
  return rows;
}

}  // namespace trendcast

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "trendcast/date.hpp"

namespace trendcast {

/// One trading day of OHLCV data.
struct Bar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double adj_close = 0.0;
  std::int64_t volume = 0;

  friend bool operator==(const Bar&, const Bar&) = default;
};

/// Daily bars for one ticker, ascending by date with no duplicates.
struct BarSeries {
  std::string ticker;
  std::vector<Bar> bars;

  std::size_t size() const noexcept { return bars.size(); }
  const Bar& operator[](std::size_t i) const { return bars[i]; }

  friend bool operator==(const BarSeries&, const BarSeries&) = default;
};

struct Violation {
  std::size_t index = 0;
  Date date;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Parses a Yahoo-style export with columns Date, Open, High, Low, Close,
/// Adj Close, Volume in any order (header names are case-insensitive; extra
/// columns are ignored). Rows are returned sorted by date.
///
/// Throws FormatError for a missing column or an unparseable cell (the message
/// carries the 1-based line number) and ValidationError for a duplicate date.
BarSeries parse_ohlcv_csv(std::string_view text, std::string ticker);

BarSeries load_ohlcv_csv(const std::filesystem::path& path, std::string ticker);

/// Serializes with round-trip precision in canonical column order.
std::string to_ohlcv_csv(const BarSeries& series);

/// Lists every bar that breaks the price/volume invariants, plus any ordering
/// problems. Never throws.
ValidationReport validate_series(const BarSeries& series);

}  // namespace trendcast

#pragma once

// Synthetic data for tests: valid random price series, small labelled
// datasets, and an end-to-end fixture whose labels come from a known rule.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trendcast/market_data.hpp"
#include "trendcast/matrix.hpp"
#include "trendcast/news_pipeline.hpp"
#include "trendcast/pipeline.hpp"
#include "trendcast/random.hpp"

namespace fixture {

/// Consecutive weekdays starting at `first`.
std::vector<trendcast::Date> trading_days(trendcast::Date first, std::size_t n);

/// Bars built from closes; open is the previous close, high/low bracket both.
trendcast::BarSeries series_from_closes(const std::vector<double>& closes);

/// Random walk that satisfies every OHLCV invariant.
trendcast::BarSeries random_series(trendcast::Rng& rng, std::size_t n);

/// Labelled points; `separable` puts classes on either side of a hyperplane
/// with a margin.
struct Dataset {
  trendcast::Matrix x;
  std::vector<int> y;
};
Dataset random_dataset(trendcast::Rng& rng, std::size_t n, std::size_t d);
Dataset separable_dataset(trendcast::Rng& rng, std::size_t n, std::size_t d, double margin);

/// Fixture where tomorrow's trend is
///   Up iff -rsi_weight * (RSI - 50) / 25 + sentiment_weight * s + noise * e >= 0
/// with e standard normal and s the day's compound sentiment. Sentiment comes
/// from articles that repeat the words "gain" or "loss" (valence +1 / -1).
struct SignalOptions {
  std::size_t bars = 315;
  std::uint64_t seed = 7;
  double rsi_weight = 1.0;
  double sentiment_weight = 1.5;
  double noise = 0.70;
  /// Move sizes are scaled by (100 / close)^a for up moves and (close / 100)^a
  /// for down moves, so the price level mean-reverts to 100 and price-level
  /// columns carry no trend. Directions are untouched. 0 gives a random walk.
  double anchor_strength = 3.0;
  std::size_t window = 14;
};

struct SignalFixture {
  trendcast::BarSeries prices;
  std::vector<trendcast::RawArticle> news;
  /// Fraction of labelled days where the noise did not flip the sign of the
  /// noise-free score: the accuracy of the optimal classifier on this draw.
  double bayes_agreement = 0.0;
  std::size_t labelled_days = 0;
};

SignalFixture make_signal_fixture(const SignalOptions& options);

/// Writes prices, news, lexicon, negators, stopwords, keywords and a config
/// into `dir` and returns the path of the config file.
std::filesystem::path write_signal_fixture(const SignalFixture& f,
                                           const std::filesystem::path& dir);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace fixture

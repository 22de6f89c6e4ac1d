#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trendcast/error.hpp"
#include "trendcast/indicators.hpp"

using namespace trendcast;

namespace {
Bar bar(double open, double close) {
  Bar b;
  b.open = open;
  b.close = close;
  b.high = std::max(open, close);
  b.low = std::min(open, close);
  return b;
}

struct Columns {
  std::vector<double> high, low, close;
};
Columns columns(const BarSeries& s) {
  Columns c;
  for (const auto& b : s.bars) {
    c.high.push_back(b.high);
    c.low.push_back(b.low);
    c.close.push_back(b.close);
  }
  return c;
}
}  // namespace

TEST_CASE("today_trend examples") {
  CHECK(today_trend(bar(10, 12)) == TrendLabel::Up);
  CHECK(today_trend(bar(10, 10)) == TrendLabel::Up);
  CHECK(today_trend(bar(12, 10)) == TrendLabel::Down);
}

TEST_CASE("tomorrow_trend examples") {
  CHECK(tomorrow_trend(fixture::series_from_closes({10, 11}), 0) == TrendLabel::Up);
  CHECK(tomorrow_trend(fixture::series_from_closes({10, 10}), 0) == TrendLabel::Up);
  CHECK(tomorrow_trend(fixture::series_from_closes({11, 10}), 0) == TrendLabel::Down);
  CHECK_THROWS_AS(tomorrow_trend(fixture::series_from_closes({10, 11}), 1), NoLabelError);
}

TEST_CASE("sma examples") {
  CHECK(sma(fixture::series_from_closes(std::vector<double>(14, 7.0)), 13) == 7.0);
  std::vector<double> ramp;
  for (int i = 1; i <= 14; ++i) ramp.push_back(i);
  CHECK(sma(fixture::series_from_closes(ramp), 13) == 7.5);
  CHECK_THROWS_AS(sma(fixture::series_from_closes(ramp), 12), WarmupError);

  Rng rng(4);
  const auto s = fixture::random_series(rng, 20);
  const auto c = columns(s);
  CHECK(oracle::relative_error(sma(s, 19), oracle::sma(c.close, 19, 14)) <= 1e-12);
}

TEST_CASE("rsi examples") {
  std::vector<double> up, down, alt;
  for (int i = 0; i < 15; ++i) {
    up.push_back(10 + i);
    down.push_back(30 - i);
    alt.push_back(i % 2 == 0 ? 10 : 11);
  }
  CHECK(rsi(fixture::series_from_closes(up), 14) == 100.0);
  CHECK(rsi(fixture::series_from_closes(down), 14) == 0.0);
  CHECK(rsi(fixture::series_from_closes(alt), 14) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(rsi(fixture::series_from_closes(std::vector<double>(15, 3.0)), 14) == 50.0);
  CHECK_THROWS_AS(rsi(fixture::series_from_closes(up), 13), WarmupError);
}

TEST_CASE("pct_k examples") {
  std::vector<double> up;
  for (int i = 0; i < 14; ++i) up.push_back(10 + i);
  // Rising series built from closes: the last close is the window's high.
  CHECK(pct_k(fixture::series_from_closes(up), 13) == 100.0);
  std::vector<double> down;
  for (int i = 0; i < 14; ++i) down.push_back(30 - i);
  CHECK(pct_k(fixture::series_from_closes(down), 13) == 0.0);
  CHECK(pct_k(fixture::series_from_closes(std::vector<double>(14, 5.0)), 13) == 50.0);

  Rng rng(8);
  const auto s = fixture::random_series(rng, 20);
  const auto c = columns(s);
  CHECK(oracle::relative_error(pct_k(s, 19), oracle::pct_k(c.high, c.low, c.close, 19, 14)) <=
        1e-12);
}

TEST_CASE("frame lengths") {
  Rng rng(6);
  const auto f16 = build_indicator_frame(fixture::random_series(rng, 16));
  REQUIRE(f16.size() == 1);
  const auto s100 = fixture::random_series(rng, 100);
  const auto f100 = build_indicator_frame(s100);
  CHECK(f100.size() == 85);
  CHECK(f100.front().date == s100[14].date);
  CHECK(f100.back().date == s100[98].date);
  CHECK_THROWS_AS(build_indicator_frame(fixture::random_series(rng, 15)), WarmupError);

  IndicatorParams p;
  p.window = 5;
  CHECK(build_indicator_frame(s100, p).size() == 100 - 5 - 1);
}

TEST_CASE("constant series") {
  const auto frame = build_indicator_frame(fixture::series_from_closes(std::vector<double>(40, 9.0)));
  for (const auto& r : frame) {
    CHECK(r.today_trend == TrendLabel::Up);
    CHECK(r.tomorrow_trend == TrendLabel::Up);
    CHECK(r.pct_k == 50.0);
    CHECK(r.rsi == 50.0);
    CHECK(r.sma == 9.0);
  }
}

TEST_CASE("frame rows agree with the point functions and the serial path") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto s = fixture::random_series(rng, 16 + rng.uniform_below(200));
    const auto frame = build_indicator_frame(s);
    CHECK(frame == build_indicator_frame_serial(s));
    for (std::size_t k = 0; k < frame.size(); ++k) {
      const std::size_t i = k + 14;
      CHECK(frame[k].sma == sma(s, i));
      CHECK(frame[k].rsi == rsi(s, i));
      CHECK(frame[k].pct_k == pct_k(s, i));
      CHECK(frame[k].tomorrow_trend == tomorrow_trend(s, i));
      CHECK(frame[k].today_trend == today_trend(s[i]));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trendcast/error.hpp"
#include "trendcast/features.hpp"
#include "trendcast/indicators.hpp"

using namespace trendcast;

namespace {

std::vector<IndicatorRow> frame(std::size_t bars, std::uint64_t seed = 1) {
  Rng rng(seed);
  return build_indicator_frame(fixture::random_series(rng, bars));
}

FeatureMatrix matrix_of(const std::vector<std::vector<double>>& cols, std::vector<int> labels = {}) {
  FeatureMatrix m;
  const std::size_t n = cols.front().size();
  for (std::size_t c = 0; c < cols.size(); ++c) m.column_names.push_back("c" + std::to_string(c));
  m.values = Matrix(n, cols.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) m.values(i, c) = cols[c][i];
  m.labels = labels.empty() ? std::vector<int>(n, 0) : labels;
  m.dates = fixture::trading_days(
      Date{std::chrono::year{2016}, std::chrono::January, std::chrono::day{4}}, n);
  return m;
}

}  // namespace

TEST_CASE("left join fills missing sentiment with zero") {
  const auto rows = frame(20);  // 5 rows
  REQUIRE(rows.size() == 5);
  std::vector<DailySentiment> sent{{rows[0].date, 0.4, 1}, {rows[2].date, -0.2, 2},
                                   {rows[4].date, 0.1, 1}};
  const auto m = join_features(rows, sent);
  REQUIRE(m.rows() == 5);
  const auto col = *m.column_index(column::sentiment);
  const auto s = m.values.column(col);
  CHECK(s == std::vector<double>{0.4, 0.0, -0.2, 0.0, 0.1});
  CHECK(m.column_names == std::vector<std::string>{"High", "Close", "Volume", "SMA", "RSI", "%K",
                                                   "Sentiment", "TodayTrend"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(m.labels[i] == encode(rows[i].tomorrow_trend));
    CHECK(m.values(i, *m.column_index(column::today_trend)) == encode(rows[i].today_trend));
    CHECK(m.dates[i] == rows[i].date);
  }

  const auto none = join_features(rows, {});
  for (double v : none.values.column(col)) CHECK(v == 0.0);

  // A weekend date never matches a trading day.
  const Date saturday{std::chrono::year{2016}, std::chrono::January, std::chrono::day{9}};
  const auto weekend = join_features(rows, {{saturday, 0.9, 1}});
  for (double v : weekend.values.column(col)) CHECK(v == 0.0);

  JoinOptions opts;
  opts.include_price_block = true;
  CHECK(join_features(rows, {}, opts).cols() == 11);
}

TEST_CASE("pearson examples") {
  Rng rng(3);
  std::vector<double> x(30), y(30), c(30, 4.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 2 * x[i] + 3;
  }
  const auto r = pearson_matrix(matrix_of({x, y, c}));
  CHECK(*r.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*r.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(r.at(2, 2).has_value());
  CHECK_FALSE(r.at(0, 2).has_value());
  CHECK(r.to_csv().find("NA") != std::string::npos);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["c2"]["c0"].is_null());
  CHECK(j["c0"]["c1"].get<double>() == *r.at(0, 1));
}

TEST_CASE("pearson matches the direct formula on random matrices") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> cols(6, std::vector<double>(50));
    for (auto& col : cols)
      for (auto& v : col) v = rng.normal() * rng.uniform(0.1, 1000);
    const auto r = pearson_matrix(matrix_of(cols));
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) {
        CHECK(std::abs(*r.at(a, b) - oracle::pearson(cols[a], cols[b])) <= 1e-12);
        CHECK(*r.at(a, b) == *r.at(b, a));
      }
  }
  CHECK_THROWS_AS(pearson_matrix(matrix_of({{1.0}})), DataError);
}

TEST_CASE("select_features examples") {
  JoinOptions opts;
  opts.include_price_block = true;
  const auto full = join_features(frame(40), {}, opts);
  const auto sel = select_features(full);
  CHECK(sel.matrix.cols() == 8);
  CHECK_FALSE(sel.matrix.column_index(column::open));
  CHECK_FALSE(sel.matrix.column_index(column::low));
  CHECK_FALSE(sel.matrix.column_index(column::adj_close));
  CHECK(sel.warnings.empty());

  const auto again = select_features(sel.matrix);
  CHECK(again.matrix.column_names == sel.matrix.column_names);
  CHECK(again.matrix.values == sel.matrix.values);
  CHECK(again.warnings.size() == 3);

  DropPolicy vol;
  vol.drop = {"Volume"};
  const auto no_vol = select_features(sel.matrix, vol);
  CHECK(no_vol.matrix.cols() == 7);
  CHECK(no_vol.matrix.values.column(0) == sel.matrix.values.column(0));
}

TEST_CASE("min-max scaling examples") {
  const auto train = matrix_of({{0, 10}, {3, 3}});
  const auto apply = matrix_of({{5, 0, 10, 20}, {3, 7, -1, 0}});
  const auto scaled = min_max_scale(train, apply);
  CHECK(scaled.matrix.values(0, 0) == 0.0);
  CHECK(scaled.matrix.values(1, 0) == -1.0);
  CHECK(scaled.matrix.values(2, 0) == 1.0);
  CHECK(scaled.matrix.values(3, 0) == 3.0);  // outside the train range, not clamped
  for (std::size_t i = 0; i < 4; ++i) CHECK(scaled.matrix.values(i, 1) == 0.0);
  CHECK_THROWS_AS(fit_min_max(FeatureMatrix{}), DataError);
  auto renamed = apply;
  renamed.column_names[1] = "other";
  CHECK_THROWS_AS(scaled.state.transform(renamed), SchemaError);
}

TEST_CASE("split examples") {
  std::vector<double> idx(10);
  for (std::size_t i = 0; i < 10; ++i) idx[i] = static_cast<double>(i);
  const auto m = matrix_of({idx});
  const auto chrono = split_train_test(m, 0.8);
  CHECK(chrono.train.values.column(0) == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(chrono.test.values.column(0) == std::vector<double>{8, 9});

  const auto r1 = split_train_test(m, 0.8, SplitMode::random, 42);
  const auto r2 = split_train_test(m, 0.8, SplitMode::random, 42);
  CHECK(r1.train.values == r2.train.values);
  CHECK(r1.test.values == r2.test.values);
  CHECK(r1.train.rows() == 8);

  const auto four = matrix_of({{1, 2, 3, 4}});
  const auto half = split_train_test(four, 0.5);
  CHECK(half.train.rows() == 2);
  CHECK(half.test.rows() == 2);

  CHECK_THROWS_AS(split_train_test(m, 1.0), ConfigError);
  CHECK_THROWS_AS(split_train_test(m, 0.0), ConfigError);
  CHECK_THROWS_AS(split_train_test(matrix_of({{1.0}}), 0.8), DataError);
  CHECK_THROWS_AS(split_train_test(m, 0.99), DataError);
}

TEST_CASE("feature csv round trip") {
  const auto m = join_features(frame(60, 9), {});
  const auto back = parse_feature_csv(to_feature_csv(m));
  CHECK(back.column_names == m.column_names);
  CHECK(back.values == m.values);
  CHECK(back.labels == m.labels);
  CHECK(back.dates == m.dates);
}

#include "fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>

#include "trendcast/indicators.hpp"
#include "trendcast/sentiment.hpp"
#include "trendcast/text_io.hpp"

namespace fixture {

using namespace trendcast;
namespace fs = std::filesystem;

std::vector<Date> trading_days(Date first, std::size_t n) {
  std::vector<Date> out;
  std::chrono::sys_days d{first};
  while (out.size() < n) {
    const std::chrono::weekday wd{d};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(d);
    d += std::chrono::days{1};
  }
  return out;
}

static const Date kStart{std::chrono::year{2016}, std::chrono::January, std::chrono::day{4}};

BarSeries series_from_closes(const std::vector<double>& closes) {
  BarSeries s;
  s.ticker = "TEST";
  const auto days = trading_days(kStart, closes.size());
  for (std::size_t i = 0; i < closes.size(); ++i) {
    Bar b;
    b.date = days[i];
    b.open = i == 0 ? closes[0] : closes[i - 1];
    b.close = closes[i];
    b.high = std::max(b.open, b.close);
    b.low = std::min(b.open, b.close);
    b.adj_close = b.close;
    b.volume = 1000;
    s.bars.push_back(b);
  }
  return s;
}

BarSeries random_series(Rng& rng, std::size_t n) {
  BarSeries s;
  s.ticker = "RAND";
  const auto days = trading_days(kStart, n);
  double close = rng.uniform(10, 500);
  for (std::size_t i = 0; i < n; ++i) {
    Bar b;
    b.date = days[i];
    b.open = close * (1 + 0.01 * rng.normal());
    // Occasional flat stretches exercise the RSI and %K conventions.
    if (rng.uniform01() < 0.05) {
      b.close = close;
      b.open = close;
    } else {
      b.close = close * (1 + 0.02 * rng.normal());
    }
    b.high = std::max(b.open, b.close) * (1 + 0.01 * rng.uniform01());
    b.low = std::min(b.open, b.close) * (1 - 0.01 * rng.uniform01());
    b.adj_close = b.close * 0.98;
    b.volume = static_cast<std::int64_t>(rng.uniform_below(1'000'000)) + 1;
    close = b.close;
    s.bars.push_back(b);
  }
  return s;
}

Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d) {
  Dataset ds{Matrix(n, d), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) ds.x(i, j) = rng.normal();
    ds.y[i] = rng.uniform01() < 0.5 ? 1 : 0;
  }
  // Guarantee both classes.
  if (n >= 2) {
    ds.y[0] = 0;
    ds.y[1] = 1;
  }
  return ds;
}

Dataset separable_dataset(Rng& rng, std::size_t n, std::size_t d, double margin) {
  std::vector<double> w(d);
  for (auto& v : w) v = rng.normal();
  Dataset ds{Matrix(0, 0), {}};
  while (ds.y.size() < n) {
    std::vector<double> row(d);
    double score = 0;
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = rng.uniform(-1, 1);
      score += w[j] * row[j];
    }
    if (std::abs(score) < margin) continue;
    ds.x.append_row(row);
    ds.y.push_back(score > 0 ? 1 : 0);
  }
  return ds;
}

namespace {

// RSI over the last `n` changes of `closes`, matching the library convention.
double rsi_of(const std::vector<double>& closes, std::size_t n) {
  double up = 0, down = 0;
  for (std::size_t t = closes.size() - n; t < closes.size(); ++t) {
    const double diff = closes[t] - closes[t - 1];
    if (diff > 0) up += diff;
    else down -= diff;
  }
  if (up == 0 && down == 0) return 50;
  if (down == 0) return 100;
  return 100 - 100 / (1 + up / down);
}

std::string article_text(int k, Rng& rng) {
  static const char* filler[] = {"acme", "shares", "traded", "session", "analysts",
                                 "quarter", "market", "desk"};
  std::vector<std::string> words;
  words.emplace_back("Acme");
  for (int i = 0; i < std::abs(k); ++i) words.emplace_back(k > 0 ? "gain" : "loss");
  for (int i = 0; i < 4; ++i) words.emplace_back(filler[rng.uniform_below(8)]);
  rng.shuffle(std::span<std::string>(words).subspan(1));
  std::string text;
  for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
  return text + ".";
}

}  // namespace

SignalFixture make_signal_fixture(const SignalOptions& o) {
  Rng rng(o.seed);
  SignalFixture f;
  f.prices.ticker = "ACME";
  const auto days = trading_days(kStart, o.bars);
  std::vector<double> closes{100.0};
  std::size_t agree = 0;

  for (std::size_t t = 0; t < o.bars; ++t) {
    Bar b;
    b.date = days[t];
    b.close = closes[t];
    b.open = t == 0 ? b.close : closes[t - 1] * (1 + 0.004 * rng.normal());
    b.high = std::max(b.open, b.close) * (1 + 0.005 * rng.uniform01());
    b.low = std::min(b.open, b.close) * (1 - 0.005 * rng.uniform01());
    b.adj_close = b.close;
    b.volume = 500'000 + static_cast<std::int64_t>(rng.uniform_below(500'000));
    f.prices.bars.push_back(b);

    // News for day t: k repetitions of a valenced word, k in [-6, 6].
    const int k = static_cast<int>(rng.uniform_below(13)) - 6;
    double s = 0;
    if (k != 0) {
      f.news.push_back({days[t], article_text(k, rng), std::nullopt, std::string("Wire")});
      s = normalize_compound(static_cast<double>(k));
    }
    // Off-topic article on the same day; filtered out by the keyword.
    if (rng.uniform01() < 0.2) {
      f.news.push_back({days[t], "Weather loss gain report for the region.", std::nullopt,
                        std::nullopt});
    }

    if (t + 1 == o.bars) break;
    int direction;
    if (t >= o.window) {
      const double rsi = rsi_of(closes, o.window);
      const double score = -o.rsi_weight * (rsi - 50) / 25 + o.sentiment_weight * s;
      const double noisy = score + o.noise * rng.normal();
      direction = noisy >= 0 ? 1 : -1;
      agree += (score >= 0) == (noisy >= 0);
      ++f.labelled_days;
    } else {
      direction = rng.uniform01() < 0.5 ? 1 : -1;
    }
    const double pull = std::pow(100.0 / closes[t], direction * o.anchor_strength);
    const double move = std::min(rng.uniform(0.003, 0.02) * pull, 0.05);
    closes.push_back(closes[t] * (1 + direction * move));
  }
  f.bayes_agreement = f.labelled_days ? static_cast<double>(agree) / f.labelled_days : 0;

  // A weekend article: never joins a trading day.
  std::chrono::sys_days sat{days.front()};
  while (std::chrono::weekday{sat} != std::chrono::Saturday) sat += std::chrono::days{1};
  f.news.push_back({Date{sat}, "Acme gain gain gain.", std::nullopt, std::nullopt});
  return f;
}

fs::path write_signal_fixture(const SignalFixture& f, const fs::path& dir) {
  fs::create_directories(dir);
  write_text_file(dir / "prices.csv", to_ohlcv_csv(f.prices));
  std::string jsonl;
  for (const auto& a : f.news) {
    nlohmann::json j{{"date", format_iso_date(a.date)}, {"article", a.article}};
    if (a.title) j["title"] = *a.title;
    if (a.publication) j["publication"] = *a.publication;
    jsonl += j.dump() + "\n";
  }
  write_text_file(dir / "news.jsonl", jsonl);
  write_text_file(dir / "lexicon.tsv", "gain\t1.0\nloss\t-1.0\n");
  write_text_file(dir / "negators.txt", "not\nnever\n");
  write_text_file(dir / "stopwords.txt", "the\nfor\na\n");
  write_text_file(dir / "keywords.txt", "acme\n");
  nlohmann::json config{
      {"ticker", f.prices.ticker},
      {"seed", 42},
      {"inputs",
       {{"prices", "prices.csv"},
        {"news", "news.jsonl"},
        {"lexicon", "lexicon.tsv"},
        {"negators", "negators.txt"},
        {"stopwords", "stopwords.txt"},
        {"keywords", "keywords.txt"}}},
      {"output_dir", "out"},
  };
  write_text_file(dir / "config.json", config.dump(2) + "\n");
  return dir / "config.json";
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("trendcast_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace fixture

// Serial reference vs OpenMP kernels. Each pair runs on identical inputs.

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "trendcast/indicators.hpp"
#include "trendcast/news_pipeline.hpp"
#include "trendcast/sentiment.hpp"
#include "trendcast/validation.hpp"

using namespace trendcast;

namespace {

const BarSeries& long_series() {
  static const BarSeries s = [] {
    Rng rng(1);
    return fixture::random_series(rng, 20'000);
  }();
  return s;
}

const std::vector<RawArticle>& corpus() {
  static const std::vector<RawArticle> articles = [] {
    fixture::SignalOptions o;
    o.bars = 4000;
    auto news = fixture::make_signal_fixture(o).news;
    for (auto& a : news)
      a.article += " <p>More at https://example.com/story and the desk's notes.</p> "
                   "Analysts do not expect a loss this quarter";
    return news;
  }();
  return articles;
}

const KeywordSet& keywords() {
  static const KeywordSet ks("ACME", {"acme"});
  return ks;
}

const Stoplist& stoplist() {
  static const Stoplist sl{"the", "and", "at", "a", "this"};
  return sl;
}

void BM_IndicatorFrameSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_indicator_frame_serial(long_series()));
}
void BM_IndicatorFrameParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_indicator_frame(long_series()));
}

void BM_PreprocessSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(preprocess_corpus_serial(corpus(), keywords(), stoplist()));
}
void BM_PreprocessParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(preprocess_corpus(corpus(), keywords(), stoplist()));
}

const std::vector<TokenizedArticle>& tokenized() {
  static const auto t = preprocess_corpus_serial(corpus(), keywords(), stoplist()).articles;
  return t;
}
const Lexicon& lexicon() {
  static const Lexicon lex = parse_lexicon("gain\t1.0\nloss\t-1.0\nexpect\t0.5\n", "not\n");
  return lex;
}

void BM_ScoreSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(score_corpus_serial(tokenized(), lexicon()));
}
void BM_ScoreParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(score_corpus(tokenized(), lexicon()));
}

FeatureMatrix grid_data() {
  Rng rng(3);
  const auto d = fixture::random_dataset(rng, 300, 8);
  FeatureMatrix m;
  for (std::size_t c = 0; c < 8; ++c) m.column_names.push_back("f" + std::to_string(c));
  m.values = d.x;
  m.labels = d.y;
  m.dates = fixture::trading_days(
      Date{std::chrono::year{2016}, std::chrono::January, std::chrono::day{4}}, 300);
  return m;
}

std::vector<ModelParams> small_grid() {
  ForestGrid fg;
  fg.n_trees = {20, 40};
  fg.max_depth = {4, 6};
  auto grid = expand_grid(fg);
  for (auto& p : expand_grid(LogRegGrid{})) grid.push_back(p);
  return grid;
}

void BM_GridSearchSerial(benchmark::State& st) {
  const auto m = grid_data();
  const auto grid = small_grid();
  for (auto _ : st) benchmark::DoNotOptimize(grid_search_serial(m, grid, {10, SplitMode::chronological, 1}));
}
void BM_GridSearchParallel(benchmark::State& st) {
  const auto m = grid_data();
  const auto grid = small_grid();
  for (auto _ : st) benchmark::DoNotOptimize(grid_search(m, grid, {10, SplitMode::chronological, 1}));
}

}  // namespace

BENCHMARK(BM_IndicatorFrameSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndicatorFrameParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PreprocessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

#include <doctest.h>

#include <cmath>

#include "trendcast/error.hpp"
#include "trendcast/random.hpp"
#include "trendcast/sentiment.hpp"

using namespace trendcast;
using Tokens = std::vector<std::string>;

namespace {
Date day(unsigned d) {
  return Date{std::chrono::year{2016}, std::chrono::January, std::chrono::day{d}};
}
Lexicon good_lexicon() { return parse_lexicon("good\t1.9\nbad\t-2.5\n", "not\nnever\n"); }
}  // namespace

TEST_CASE("raw valence sum") {
  const auto lex = good_lexicon();
  CHECK(raw_valence_sum(Tokens{"good"}, lex) == doctest::Approx(1.9).epsilon(1e-15));
  CHECK(raw_valence_sum(Tokens{}, lex) == 0.0);
  CHECK(raw_valence_sum(Tokens{"not", "good"}, lex) == doctest::Approx(1.9 * -0.74));
  CHECK(raw_valence_sum(Tokens{"not", "good"}, lex) == doctest::Approx(-1.406).epsilon(1e-12));
  // Negator further back than the window has no effect.
  CHECK(raw_valence_sum(Tokens{"not", "a", "b", "c", "good"}, lex) == doctest::Approx(1.9));
  CHECK(raw_valence_sum(Tokens{"not", "a", "b", "good"}, lex) == doctest::Approx(-1.406));
}

TEST_CASE("shipped lexicon carries the reference valence for good") {
  const auto lex = load_lexicon(TRENDCAST_DATA_DIR "/lexicon/vader_lexicon.tsv",
                                TRENDCAST_DATA_DIR "/lexicon/negators.txt");
  CHECK(raw_valence_sum(Tokens{"good"}, lex) == 1.9);
  CHECK(lex.negators.count("not") == 1);
}

TEST_CASE("normalize_compound examples") {
  CHECK(normalize_compound(0.0) == 0.0);
  CHECK(std::abs(normalize_compound(std::sqrt(15.0)) - 1 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(normalize_compound(-std::sqrt(15.0)) + 1 / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("normalize_compound is odd, bounded and increasing") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-1e3, 1e3);
    const double b = a + rng.uniform(1e-3, 10);
    CHECK(normalize_compound(-a) == -normalize_compound(a));
    CHECK(std::abs(normalize_compound(a)) < 1.0);
    CHECK(normalize_compound(a) < normalize_compound(b));
  }
}

TEST_CASE("score_article examples") {
  const auto lex = good_lexicon();
  CHECK(score_article({day(4), {"nothing", "here"}}, lex).compound == 0.0);
  const auto single = parse_lexicon("up\t3.873\n", "");
  CHECK(score_article({day(4), {"up"}}, single).compound == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(score_article({day(4), {"not", "good"}}, lex).compound ==
        doctest::Approx(-0.341).epsilon(1e-3));
  const double expected = -1.406 / std::sqrt(1.406 * 1.406 + 15);
  CHECK(std::abs(score_article({day(4), {"not", "good"}}, lex).compound - expected) < 1e-12);
}

TEST_CASE("score_corpus matches the serial path") {
  const auto lex = good_lexicon();
  Rng rng(2);
  const Tokens words{"good", "bad", "not", "never", "meh"};
  std::vector<TokenizedArticle> corpus;
  for (int i = 0; i < 400; ++i) {
    TokenizedArticle a{day(1 + static_cast<unsigned>(rng.uniform_below(28))), {}};
    for (std::size_t w = 0, n = rng.uniform_below(30); w < n; ++w)
      a.tokens.push_back(words[rng.uniform_below(words.size())]);
    corpus.push_back(a);
  }
  const auto par = score_corpus(corpus, lex);
  const auto ser = score_corpus_serial(corpus, lex);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].date == ser[i].date);
    CHECK(par[i].compound == ser[i].compound);
  }
}

TEST_CASE("aggregate_daily examples") {
  auto out = aggregate_daily({{day(4), 0.5}, {day(4), -0.5}});
  REQUIRE(out.size() == 1);
  CHECK(out[0].overall == 0.0);
  CHECK(out[0].article_count == 2);

  out = aggregate_daily({{day(4), 0.3}});
  REQUIRE(out.size() == 1);
  CHECK(out[0].overall == 0.3);
  CHECK(out[0].article_count == 1);

  CHECK(aggregate_daily({}).empty());
}

TEST_CASE("aggregate_daily groups dates ascending; sum mode adds") {
  const auto out = aggregate_daily({{day(6), 0.2}, {day(4), 0.6}, {day(6), 0.4}},
                                   Aggregation::sum);
  REQUIRE(out.size() == 2);
  CHECK(out[0].date == day(4));
  CHECK(out[1].overall == doctest::Approx(0.6));
  CHECK(out[1].article_count == 2);
}

TEST_CASE("lexicon validation") {
  CHECK_THROWS_AS(parse_lexicon("good\t9\n", ""), ValidationError);
  CHECK_THROWS_AS(parse_lexicon("good\n", ""), FormatError);
}

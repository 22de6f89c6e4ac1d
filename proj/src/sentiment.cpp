#include "trendcast/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "trendcast/error.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

Lexicon parse_lexicon(std::string_view valence_tsv, std::string_view negator_list) {
  Lexicon lex;
  const auto lines = split_lines(valence_tsv);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = lines[li];
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::string where = "lexicon line " + std::to_string(li + 1) + ": ";
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw FormatError(where + "expected token<TAB>valence");
    }
    const std::string_view token = trim(line.substr(0, tab));
    std::string_view rest = line.substr(tab + 1);
    rest = trim(rest.substr(0, rest.find('\t')));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size()) {
      throw FormatError(where + "bad valence '" + std::string(rest) + "'");
    }
    if (!(v >= -4.0 && v <= 4.0)) {
      throw ValidationError(where + "valence " + std::string(rest) + " outside [-4, 4]");
    }
    lex.valence[std::string(token)] = v;
  }
  for (auto& w : parse_word_list(negator_list)) lex.negators.insert(std::move(w));
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& valence_tsv,
                     const std::filesystem::path& negator_list) {
  try {
    return parse_lexicon(read_text_file(valence_tsv), read_text_file(negator_list));
  } catch (const FormatError& e) {
    throw FormatError(valence_tsv.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(valence_tsv.string() + ": " + e.what());
  }
}

double raw_valence_sum(std::span<const std::string> tokens, const Lexicon& lexicon) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = lexicon.valence.find(tokens[i]);
    if (it == lexicon.valence.end()) continue;
    double v = it->second;
    const std::size_t lookback = std::min(i, kNegationWindow);
    for (std::size_t back = 1; back <= lookback; ++back) {
      if (lexicon.negators.contains(tokens[i - back])) {
        v *= kNegationScalar;
        break;
      }
    }
    sum += v;
  }
  return sum;
}

double normalize_compound(double raw) {
  return raw / std::sqrt(raw * raw + kNormalizationAlpha);
}

ArticleScore score_article(const TokenizedArticle& article, const Lexicon& lexicon) {
  return {article.date, normalize_compound(raw_valence_sum(article.tokens, lexicon))};
}

std::vector<ArticleScore> score_corpus(const std::vector<TokenizedArticle>& articles,
                                       const Lexicon& lexicon) {
  std::vector<ArticleScore> scores(articles.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(articles.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) scores[i] = score_article(articles[i], lexicon);
  return scores;
}

std::vector<ArticleScore> score_corpus_serial(const std::vector<TokenizedArticle>& articles,
                                              const Lexicon& lexicon) {
  std::vector<ArticleScore> scores;
  scores.reserve(articles.size());
  for (const auto& a : articles) scores.push_back(score_article(a, lexicon));
  return scores;
}

std::vector<DailySentiment> aggregate_daily(const std::vector<ArticleScore>& scores,
                                            Aggregation mode) {
  // Summation order follows input order within a day, so output is
  // independent of how the scores were produced.
  struct Acc {
    double sum = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
  };
  std::map<Date, Acc> by_day;
  for (const auto& s : scores) {
    Acc& a = by_day[s.date];
    a.lo = a.count == 0 ? s.compound : std::min(a.lo, s.compound);
    a.hi = a.count == 0 ? s.compound : std::max(a.hi, s.compound);
    a.sum += s.compound;
    ++a.count;
  }
  std::vector<DailySentiment> out;
  out.reserve(by_day.size());
  for (const auto& [date, a] : by_day) {
    double overall = a.sum;
    if (mode == Aggregation::mean) {
      // Rounding in sum / count can step just outside the inputs' range.
      overall = std::clamp(a.sum / static_cast<double>(a.count), a.lo, a.hi);
    }
    out.push_back({date, overall, a.count});
  }
  return out;
}

}  // namespace trendcast

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendcast/date.hpp"
#include "trendcast/news_pipeline.hpp"

namespace trendcast {

/// Scale applied to a valenced word that follows a negation cue.
inline constexpr double kNegationScalar = -0.74;
/// How many preceding tokens are searched for a negation cue.
inline constexpr std::size_t kNegationWindow = 3;
/// Normalization constant in s / sqrt(s^2 + alpha).
inline constexpr double kNormalizationAlpha = 15.0;

struct Lexicon {
  std::unordered_map<std::string, double> valence;  // each in [-4, 4]
  std::unordered_set<std::string> negators;
};

/// Reads "token<TAB>valence[<TAB>...]" lines; extra columns are ignored.
/// Throws FormatError on bad lines, ValidationError on out-of-range valences.
Lexicon parse_lexicon(std::string_view valence_tsv, std::string_view negator_list);

Lexicon load_lexicon(const std::filesystem::path& valence_tsv,
                     const std::filesystem::path& negator_list);

struct ArticleScore {
  Date date;
  double compound = 0.0;
};

struct DailySentiment {
  Date date;
  double overall = 0.0;
  std::size_t article_count = 0;
};

enum class Aggregation { mean, sum };

double raw_valence_sum(std::span<const std::string> tokens, const Lexicon& lexicon);

/// Maps a raw valence sum into (-1, 1); odd and strictly increasing.
double normalize_compound(double raw);

ArticleScore score_article(const TokenizedArticle& article, const Lexicon& lexicon);

std::vector<ArticleScore> score_corpus(const std::vector<TokenizedArticle>& articles,
                                       const Lexicon& lexicon);
std::vector<ArticleScore> score_corpus_serial(
    const std::vector<TokenizedArticle>& articles, const Lexicon& lexicon);

/// One entry per distinct date, ascending. With Aggregation::sum the overall
/// value is not confined to [-1, 1].
std::vector<DailySentiment> aggregate_daily(const std::vector<ArticleScore>& scores,
                                            Aggregation mode = Aggregation::mean);

}  // namespace trendcast

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "trendcast/date.hpp"

namespace trendcast {

struct RawArticle {
  Date date;
  std::string article;
  std::optional<std::string> title;
  std::optional<std::string> publication;
};

struct TokenizedArticle {
  Date date;
  std::vector<std::string> tokens;

  friend bool operator==(const TokenizedArticle&, const TokenizedArticle&) = default;
};

/// Relevance keywords for one ticker. Multi-word keywords ("tim cook") match
/// as a contiguous phrase.
class KeywordSet {
public:
  /// Keywords are lowercased; throws ConfigError if none remain.
  KeywordSet(std::string ticker, const std::vector<std::string>& keywords);

  const std::string& ticker() const noexcept { return ticker_; }
  const std::set<std::string>& keywords() const noexcept { return keywords_; }

private:
  std::string ticker_;
  std::set<std::string> keywords_;
};

using Stoplist = std::unordered_set<std::string>;

/// Removes URLs, e-mail addresses, HTML tags and entities, punctuation and
/// digit-only words. Possessive "'s" is dropped and other apostrophes are
/// joined ("don't" -> "dont"). Case is preserved; words are separated by
/// single spaces with no leading or trailing space.
std::string strip_noise(std::string_view text);

/// ASCII lowercase; other bytes are left untouched.
std::string to_lowercase(std::string_view text);

/// True iff some keyword occurs in `text` bounded on both sides by a
/// non-alphanumeric character or the string edge.
bool matches_keywords(std::string_view text, const KeywordSet& keywords);

std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist);

/// Tokens shorter than this are treated as punctuation residue.
inline constexpr std::size_t kMinTokenLength = 2;

struct CorpusStats {
  std::size_t articles_in = 0;
  std::size_t dropped_empty = 0;     // nothing left after cleaning
  std::size_t dropped_unmatched = 0; // no keyword present
  std::size_t articles_out = 0;
};

struct PreprocessedCorpus {
  std::vector<TokenizedArticle> articles;
  CorpusStats stats;
};

/// Cleans, filters and tokenizes a corpus. Title (when present) is prepended
/// to the body before matching. Output is ordered by (date, input index).
///
/// Throws ConfigError if a keyword could never survive cleaning and stopword
/// removal, since such a keyword would let through articles that no longer
/// contain it.
PreprocessedCorpus preprocess_corpus(const std::vector<RawArticle>& articles,
                                     const KeywordSet& keywords,
                                     const Stoplist& stoplist);

/// Single-threaded reference for preprocess_corpus; identical output.
PreprocessedCorpus preprocess_corpus_serial(const std::vector<RawArticle>& articles,
                                            const KeywordSet& keywords,
                                            const Stoplist& stoplist);

struct NewsLoadResult {
  std::vector<RawArticle> articles;
  std::size_t lines_read = 0;
  std::size_t dropped_empty = 0;  // blank article body
};

/// Parses JSON-lines news: {"date": "YYYY-MM-DD", "article": "...",
/// "title": "...", "publication": "..."}. A date with a time suffix
/// ("2016-01-04 13:00:00" or ISO "T") is truncated to the calendar day.
/// Throws FormatError with the line number on malformed records.
NewsLoadResult parse_news_jsonl(std::string_view text);

NewsLoadResult load_news_jsonl(const std::filesystem::path& path);

Stoplist load_stoplist(const std::filesystem::path& path);

KeywordSet load_keywords(const std::filesystem::path& path, std::string ticker);

}  // namespace trendcast

#include "trendcast/news_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Bytes >= 0x80 belong to multi-byte UTF-8 letters unless recognised below.
bool is_word_byte(unsigned char c) { return is_ascii_alnum(c) || c >= 0x80; }

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Replaces HTML tags and character entities with spaces.
std::string strip_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '<' && i + 1 < text.size()) {
      const unsigned char n = static_cast<unsigned char>(text[i + 1]);
      const bool tag_start = n == '/' || n == '!' || n == '?' || (n < 0x80 && std::isalpha(n));
      const std::size_t close = text.find('>', i + 1);
      if (tag_start && close != std::string_view::npos) {
        out.push_back(' ');
        i = close;
        continue;
      }
    }
    if (c == '&') {
      std::size_t j = i + 1;
      if (j < text.size() && text[j] == '#') ++j;
      const std::size_t name_start = j;
      while (j < text.size() && j - name_start < 10 &&
             is_ascii_alnum(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j > name_start && j < text.size() && text[j] == ';') {
        out.push_back(' ');
        i = j;
        continue;
      }
    }
    out.push_back(c);
  }
  return out;
}

bool looks_like_url(std::string_view chunk) {
  if (chunk.find("://") != std::string_view::npos) return true;
  if (chunk.size() >= 4) {
    std::string head;
    for (char c : chunk.substr(0, 4)) head.push_back(ascii_lower(c));
    if (head == "www.") return true;
  }
  return false;
}

bool looks_like_email(std::string_view chunk) {
  const std::size_t at = chunk.find('@');
  if (at == 0 || at == std::string_view::npos) return false;
  const std::size_t dot = chunk.find('.', at + 2);
  return dot != std::string_view::npos && dot + 1 < chunk.size();
}

// Length of an apostrophe at `i` (ASCII ' or U+2018 / U+2019), else 0.
std::size_t apostrophe_len(std::string_view s, std::size_t i) {
  if (s[i] == '\'') return 1;
  if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      (static_cast<unsigned char>(s[i + 2]) == 0x98 ||
       static_cast<unsigned char>(s[i + 2]) == 0x99)) {
    return 3;
  }
  return 0;
}

bool all_digits(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void append_word(std::string& out, std::string& word) {
  if (!word.empty() && !all_digits(word)) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  word.clear();
}

void emit_chunk_words(std::string_view chunk, std::string& out) {
  std::string word;
  for (std::size_t i = 0; i < chunk.size();) {
    const unsigned char c = static_cast<unsigned char>(chunk[i]);
    if (std::size_t alen = apostrophe_len(chunk, i)) {
      const std::size_t next = i + alen;
      const bool possessive = !word.empty() && next < chunk.size() &&
                              (chunk[next] == 's' || chunk[next] == 'S') &&
                              (next + 1 == chunk.size() ||
                               !is_word_byte(static_cast<unsigned char>(chunk[next + 1])));
      i = possessive ? next + 1 : next;
      continue;
    }
    if (c == 0xE2 && i + 2 < chunk.size() && static_cast<unsigned char>(chunk[i + 1]) == 0x80) {
      // General punctuation block (dashes, quotes, ellipsis, ...).
      append_word(out, word);
      i += 3;
      continue;
    }
    if (c == 0xC2 && i + 1 < chunk.size() && static_cast<unsigned char>(chunk[i + 1]) == 0xA0) {
      append_word(out, word);
      i += 2;
      continue;
    }
    if (is_word_byte(c)) {
      word.push_back(static_cast<char>(c));
    } else {
      append_word(out, word);
    }
    ++i;
  }
  append_word(out, word);
}

std::vector<std::string> drop_short(std::vector<std::string> tokens) {
  std::erase_if(tokens, [](const std::string& t) { return t.size() < kMinTokenLength; });
  return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string normalize_keyword(std::string_view kw) { return join(tokenize(to_lowercase(kw))); }

void check_keywords_survive(const KeywordSet& keywords, const Stoplist& stoplist) {
  for (const auto& kw : keywords.keywords()) {
    auto cleaned =
        drop_short(remove_stopwords(tokenize(to_lowercase(strip_noise(kw))), stoplist));
    if (join(cleaned) != kw) {
      throw ConfigError("keyword '" + kw + "' for " + keywords.ticker() +
                        " does not survive cleaning (stopword, digits, punctuation or "
                        "one-letter word)");
    }
  }
}

enum class Outcome { kept, empty, unmatched };

Outcome process_article(const RawArticle& raw, const KeywordSet& keywords,
                        const Stoplist& stoplist, TokenizedArticle& out) {
  std::string text = raw.title ? *raw.title + " " + raw.article : raw.article;
  const std::string cleaned = to_lowercase(strip_noise(text));
  if (cleaned.empty()) return Outcome::empty;
  if (!matches_keywords(cleaned, keywords)) return Outcome::unmatched;
  out.date = raw.date;
  out.tokens = drop_short(remove_stopwords(tokenize(cleaned), stoplist));
  return out.tokens.empty() ? Outcome::empty : Outcome::kept;
}

PreprocessedCorpus collect(std::vector<TokenizedArticle>& processed,
                           const std::vector<Outcome>& outcomes) {
  PreprocessedCorpus result;
  result.stats.articles_in = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    switch (outcomes[i]) {
      case Outcome::kept:
        result.articles.push_back(std::move(processed[i]));
        break;
      case Outcome::empty:
        ++result.stats.dropped_empty;
        break;
      case Outcome::unmatched:
        ++result.stats.dropped_unmatched;
        break;
    }
  }
  // Stable: equal dates keep input order.
  std::stable_sort(result.articles.begin(), result.articles.end(),
                   [](const TokenizedArticle& a, const TokenizedArticle& b) {
                     return a.date < b.date;
                   });
  result.stats.articles_out = result.articles.size();
  return result;
}

}  // namespace

KeywordSet::KeywordSet(std::string ticker, const std::vector<std::string>& keywords)
    : ticker_(std::move(ticker)) {
  for (const auto& kw : keywords) {
    std::string norm = normalize_keyword(kw);
    if (!norm.empty()) keywords_.insert(std::move(norm));
  }
  if (keywords_.empty()) throw ConfigError("keyword set for " + ticker_ + " is empty");
}

std::string strip_noise(std::string_view text) {
  const std::string unmarked = strip_markup(text);
  std::string out;
  out.reserve(unmarked.size());
  std::size_t i = 0;
  const std::string_view s = unmarked;
  while (i < s.size()) {
    while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) break;
    const std::string_view chunk = s.substr(start, i - start);
    if (looks_like_url(chunk) || looks_like_email(chunk)) continue;
    emit_chunk_words(chunk, out);
  }
  return out;
}

std::string to_lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

bool matches_keywords(std::string_view text, const KeywordSet& keywords) {
  for (const auto& kw : keywords.keywords()) {
    std::size_t pos = text.find(kw);
    while (pos != std::string_view::npos) {
      const bool left_ok = pos == 0 || !is_word_byte(static_cast<unsigned char>(text[pos - 1]));
      const std::size_t end = pos + kw.size();
      const bool right_ok =
          end == text.size() || !is_word_byte(static_cast<unsigned char>(text[end]));
      if (left_ok && right_ok) return true;
      pos = text.find(kw, pos + 1);
    }
  }
  return false;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist) {
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

PreprocessedCorpus preprocess_corpus(const std::vector<RawArticle>& articles,
                                     const KeywordSet& keywords, const Stoplist& stoplist) {
  check_keywords_survive(keywords, stoplist);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(articles.size());
  std::vector<TokenizedArticle> processed(articles.size());
  std::vector<Outcome> outcomes(articles.size(), Outcome::empty);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    outcomes[i] = process_article(articles[i], keywords, stoplist, processed[i]);
  }
  return collect(processed, outcomes);
}

PreprocessedCorpus preprocess_corpus_serial(const std::vector<RawArticle>& articles,
                                            const KeywordSet& keywords,
                                            const Stoplist& stoplist) {
  check_keywords_survive(keywords, stoplist);
  std::vector<TokenizedArticle> processed(articles.size());
  std::vector<Outcome> outcomes(articles.size(), Outcome::empty);
  for (std::size_t i = 0; i < articles.size(); ++i) {
    outcomes[i] = process_article(articles[i], keywords, stoplist, processed[i]);
  }
  return collect(processed, outcomes);
}

NewsLoadResult parse_news_jsonl(std::string_view text) {
  NewsLoadResult result;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = trim(lines[li]);
    if (line.empty()) continue;
    ++result.lines_read;
    const std::string where = "news line " + std::to_string(li + 1) + ": ";
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(where + "invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw FormatError(where + "expected a JSON object");
    auto date_it = obj.find("date");
    if (date_it == obj.end() || !date_it->is_string()) {
      throw FormatError(where + "missing string field 'date'");
    }
    std::string_view date_text = date_it->get_ref<const std::string&>();
    if (date_text.size() > 10 && (date_text[10] == ' ' || date_text[10] == 'T')) {
      date_text = date_text.substr(0, 10);
    }
    auto date = parse_iso_date(date_text);
    if (!date) throw FormatError(where + "bad date '" + std::string(date_text) + "'");

    const auto optional_string = [&](const char* key) -> std::optional<std::string> {
      auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) throw FormatError(where + "field '" + key + "' must be a string");
      return it->get<std::string>();
    };
    auto body = optional_string("article");
    if (!obj.contains("article")) throw FormatError(where + "missing field 'article'");
    if (!body || trim(*body).empty()) {
      ++result.dropped_empty;
      continue;
    }
    result.articles.push_back(
        {*date, std::move(*body), optional_string("title"), optional_string("publication")});
  }
  return result;
}

NewsLoadResult load_news_jsonl(const std::filesystem::path& path) {
  try {
    return parse_news_jsonl(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Stoplist load_stoplist(const std::filesystem::path& path) {
  Stoplist stop;
  for (auto& w : parse_word_list(read_text_file(path))) stop.insert(to_lowercase(w));
  return stop;
}

KeywordSet load_keywords(const std::filesystem::path& path, std::string ticker) {
  return KeywordSet(std::move(ticker), parse_word_list(read_text_file(path)));
}

}  // namespace trendcast

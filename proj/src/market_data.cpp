#include "trendcast/market_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>

#include "trendcast/error.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

namespace {

enum Field { kDate, kOpen, kHigh, kLow, kClose, kAdjClose, kVolume, kFieldCount };

constexpr std::array<std::string_view, kFieldCount> kFieldNames{
    "Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"};

std::string normalize_header(std::string_view s) {
  std::string out;
  for (char c : trim(s)) {
    if (c == ' ' || c == '_') continue;
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  // Tolerate a UTF-8 byte-order mark on the first header cell.
  if (out.starts_with("\xEF\xBB\xBF")) out.erase(0, 3);
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::int64_t> parse_volume(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!s.empty() && ec == std::errc{} && ptr == s.data() + s.size()) return v;
  // Some exports write volume as "270597600.0".
  if (auto d = parse_double(s); d && std::floor(*d) == *d && std::abs(*d) < 9.0e18) {
    return static_cast<std::int64_t>(*d);
  }
  return std::nullopt;
}

std::string fmt_price(double v) { return format_double(v); }

}  // namespace

BarSeries parse_ohlcv_csv(std::string_view text, std::string ticker) {
  BarSeries series{std::move(ticker), {}};
  const auto lines = split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw FormatError("price CSV: missing header row");

  const auto header = split_csv_record(lines[header_line]);
  std::array<std::size_t, kFieldCount> col{};
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    const std::string want = normalize_header(kFieldNames[f]);
    auto it = std::find_if(header.begin(), header.end(),
                           [&](const std::string& h) { return normalize_header(h) == want; });
    if (it == header.end()) {
      throw FormatError("price CSV: missing column '" + std::string(kFieldNames[f]) + "'");
    }
    col[f] = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;

  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::size_t line_no = li + 1;
    const auto cells = split_csv_record(lines[li]);
    if (cells.size() < needed) {
      throw FormatError("price CSV line " + std::to_string(line_no) + ": expected at least " +
                        std::to_string(needed) + " cells, found " +
                        std::to_string(cells.size()));
    }
    const auto bad_cell = [&](Field f) {
      return FormatError("price CSV line " + std::to_string(line_no) + ": cannot parse " +
                         std::string(kFieldNames[f]) + " value '" + cells[col[f]] + "'");
    };
    Bar bar;
    auto date = parse_iso_date(trim(cells[col[kDate]]));
    if (!date) throw bad_cell(kDate);
    bar.date = *date;
    const std::array<std::pair<Field, double*>, 5> prices{{{kOpen, &bar.open},
                                                           {kHigh, &bar.high},
                                                           {kLow, &bar.low},
                                                           {kClose, &bar.close},
                                                           {kAdjClose, &bar.adj_close}}};
    for (auto [f, dst] : prices) {
      auto v = parse_double(cells[col[f]]);
      if (!v) throw bad_cell(f);
      *dst = *v;
    }
    auto vol = parse_volume(cells[col[kVolume]]);
    if (!vol) throw bad_cell(kVolume);
    bar.volume = *vol;
    series.bars.push_back(bar);
  }

  std::stable_sort(series.bars.begin(), series.bars.end(),
                   [](const Bar& a, const Bar& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < series.bars.size(); ++i) {
    if (series.bars[i].date == series.bars[i - 1].date) {
      throw ValidationError("price CSV: duplicate date " + format_iso_date(series.bars[i].date));
    }
  }
  return series;
}

BarSeries load_ohlcv_csv(const std::filesystem::path& path, std::string ticker) {
  try {
    return parse_ohlcv_csv(read_text_file(path), std::move(ticker));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string to_ohlcv_csv(const BarSeries& series) {
  std::string out = "Date,Open,High,Low,Close,Adj Close,Volume\n";
  for (const Bar& b : series.bars) {
    out += format_iso_date(b.date);
    for (double v : {b.open, b.high, b.low, b.close, b.adj_close}) {
      out += ',';
      out += fmt_price(v);
    }
    out += ',';
    out += std::to_string(b.volume);
    out += '\n';
  }
  return out;
}

ValidationReport validate_series(const BarSeries& series) {
  ValidationReport report;
  for (std::size_t i = 0; i < series.bars.size(); ++i) {
    const Bar& b = series.bars[i];
    std::vector<std::string> problems;
    if (!(b.open > 0 && b.high > 0 && b.low > 0 && b.close > 0 && b.adj_close > 0)) {
      problems.emplace_back("non-positive price");
    }
    if (b.low > b.high) problems.emplace_back("low above high");
    if (b.low > std::min(b.open, b.close)) problems.emplace_back("low above open/close");
    if (b.high < std::max(b.open, b.close)) problems.emplace_back("high below open/close");
    if (b.volume < 0) problems.emplace_back("negative volume");
    if (i > 0 && !(series.bars[i - 1].date < b.date)) {
      problems.emplace_back("date not after previous bar");
    }
    if (problems.empty()) continue;
    std::string msg = format_iso_date(b.date) + ":";
    for (std::size_t p = 0; p < problems.size(); ++p) {
      msg += (p == 0 ? " " : "; ") + problems[p];
    }
    report.violations.push_back({i, b.date, std::move(msg)});
  }
  return report;
}

}  // namespace trendcast

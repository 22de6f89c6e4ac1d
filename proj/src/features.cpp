#include "trendcast/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "trendcast/error.hpp"
#include "trendcast/random.hpp"
#include "trendcast/text_io.hpp"

namespace trendcast {

std::optional<std::size_t> FeatureMatrix::column_index(std::string_view name) const {
  auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - column_names.begin());
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  FeatureMatrix out;
  out.column_names = column_names;
  out.values = values.select_rows(indices);
  out.labels.reserve(indices.size());
  out.dates.reserve(indices.size());
  for (std::size_t i : indices) {
    out.labels.push_back(labels[i]);
    out.dates.push_back(dates[i]);
  }
  return out;
}

void FeatureMatrix::check_shape() const {
  const bool cols_ok = values.rows() == 0 || values.cols() == column_names.size();
  if (!cols_ok || labels.size() != values.rows() || dates.size() != values.rows()) {
    throw SchemaError("feature matrix shape mismatch: " + std::to_string(values.rows()) +
                      " rows, " + std::to_string(labels.size()) + " labels, " +
                      std::to_string(dates.size()) + " dates, " +
                      std::to_string(column_names.size()) + " names");
  }
}

FeatureMatrix join_features(const std::vector<IndicatorRow>& rows,
                            const std::vector<DailySentiment>& sentiment,
                            const JoinOptions& options) {
  std::map<Date, double> by_date;
  for (const auto& s : sentiment) by_date[s.date] = s.overall;

  FeatureMatrix m;
  if (options.include_price_block) {
    m.column_names = {std::string(column::open),  std::string(column::high),
                      std::string(column::low),   std::string(column::close),
                      std::string(column::adj_close)};
  } else {
    m.column_names = {std::string(column::high), std::string(column::close)};
  }
  for (auto name : {column::volume, column::sma, column::rsi, column::pct_k, column::sentiment,
                    column::today_trend}) {
    m.column_names.emplace_back(name);
  }
  m.values = Matrix(rows.size(), m.column_names.size());
  m.labels.reserve(rows.size());
  m.dates.reserve(rows.size());

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const IndicatorRow& in = rows[r];
    auto it = by_date.find(in.date);
    const double sent = it == by_date.end() ? 0.0 : it->second;
    std::vector<double> v;
    if (options.include_price_block) {
      v = {in.open, in.high, in.low, in.close, in.adj_close};
    } else {
      v = {in.high, in.close};
    }
    v.insert(v.end(), {static_cast<double>(in.volume), in.sma, in.rsi, in.pct_k, sent,
                       static_cast<double>(encode(in.today_trend))});
    std::copy(v.begin(), v.end(), m.values.row(r).begin());
    m.labels.push_back(encode(in.tomorrow_trend));
    m.dates.push_back(in.date);
  }
  return m;
}

std::string CorrelationMatrix::to_csv() const {
  std::string out;
  for (const auto& n : names) out += "," + n;
  out += '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += names[i];
    for (std::size_t j = 0; j < names.size(); ++j) {
      auto v = at(i, j);
      out += ',';
      out += v ? format_double(*v) : "NA";
    }
    out += '\n';
  }
  return out;
}

std::string CorrelationMatrix::to_json() const {
  // ordered_json keeps the feature order of the matrix.
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < names.size(); ++j) {
      auto v = at(i, j);
      row[names[j]] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    }
    doc[names[i]] = std::move(row);
  }
  return doc.dump(2) + "\n";
}

CorrelationMatrix pearson_matrix(const FeatureMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t d = m.cols();
  if (n < 2) throw DataError("correlation needs at least 2 rows, got " + std::to_string(n));

  // Two-pass: centre each column, then take normalized cross products.
  std::vector<std::vector<double>> centered(d);
  std::vector<double> norms(d);
  for (std::size_t c = 0; c < d; ++c) {
    auto col = m.values.column(c);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double& v : col) {
      v -= mean;
      ss += v * v;
    }
    centered[c] = std::move(col);
    norms[c] = std::sqrt(ss);
  }

  CorrelationMatrix out;
  out.names = m.column_names;
  out.values.assign(d * d, std::nullopt);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      double r = 1.0;
      if (i != j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += centered[i][k] * centered[j][k];
        r = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      }
      out.values[i * d + j] = r;
      out.values[j * d + i] = r;
    }
  }
  return out;
}

SelectionResult select_features(const FeatureMatrix& m, const DropPolicy& policy) {
  SelectionResult result;
  std::vector<bool> dropped(m.cols(), false);
  for (const auto& name : policy.drop) {
    if (auto idx = m.column_index(name)) {
      dropped[*idx] = true;
    } else {
      result.warnings.push_back("drop policy: column '" + name + "' not present");
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!dropped[c]) keep.push_back(c);
  }
  result.matrix.values = m.values.select_cols(keep);
  for (std::size_t c : keep) result.matrix.column_names.push_back(m.column_names[c]);
  result.matrix.labels = m.labels;
  result.matrix.dates = m.dates;
  return result;
}

double ScalerState::scale(std::size_t col, double x) const noexcept {
  const double lo = mins[col];
  const double hi = maxs[col];
  if (hi == lo) return 0.0;
  return -1.0 + 2.0 * (x - lo) / (hi - lo);
}

void ScalerState::transform_row(std::span<double> row) const noexcept {
  for (std::size_t c = 0; c < row.size() && c < mins.size(); ++c) row[c] = scale(c, row[c]);
}

FeatureMatrix ScalerState::transform(const FeatureMatrix& m) const {
  if (m.column_names != names) {
    throw SchemaError("scaler was fitted on different columns");
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) transform_row(out.values.row(r));
  return out;
}

ScalerState fit_min_max(const FeatureMatrix& train) {
  if (train.rows() == 0) throw DataError("cannot fit scaler on an empty training set");
  ScalerState s;
  s.names = train.column_names;
  s.mins.assign(train.cols(), 0.0);
  s.maxs.assign(train.cols(), 0.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double lo = train.values(0, c);
    double hi = lo;
    for (std::size_t r = 1; r < train.rows(); ++r) {
      lo = std::min(lo, train.values(r, c));
      hi = std::max(hi, train.values(r, c));
    }
    s.mins[c] = lo;
    s.maxs[c] = hi;
  }
  return s;
}

ScaledMatrix min_max_scale(const FeatureMatrix& train, const FeatureMatrix& apply_to) {
  ScalerState state = fit_min_max(train);
  FeatureMatrix scaled = state.transform(apply_to);
  return {std::move(scaled), std::move(state)};
}

std::string_view to_string(SplitMode mode) noexcept {
  return mode == SplitMode::chronological ? "chrono" : "random";
}

std::optional<SplitMode> parse_split_mode(std::string_view text) noexcept {
  if (text == "chrono" || text == "chronological") return SplitMode::chronological;
  if (text == "random") return SplitMode::random;
  return std::nullopt;
}

TrainTestSplit split_train_test(const FeatureMatrix& m, double ratio, SplitMode mode,
                                std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ConfigError("split ratio must lie in (0, 1), got " + format_double(ratio));
  }
  const std::size_t n = m.rows();
  const auto n_train = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    throw DataError("split of " + std::to_string(n) + " rows at ratio " + format_double(ratio) +
                    " leaves an empty train or test set");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (mode == SplitMode::random) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
  }
  const std::span<const std::size_t> all(order);
  return {m.select_rows(all.first(n_train)), m.select_rows(all.subspan(n_train))};
}

std::string to_feature_csv(const FeatureMatrix& m) {
  std::string out(column::date);
  for (const auto& n : m.column_names) out += "," + n;
  out += ",";
  out += column::label;
  out += '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += format_iso_date(m.dates[r]);
    for (double v : m.values.row(r)) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(m.labels[r]);
    out += '\n';
  }
  return out;
}

FeatureMatrix parse_feature_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw FormatError("feature CSV: missing header row");
  const auto header = split_csv_record(lines[0]);
  std::optional<std::size_t> date_col;
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> feature_cols;
  FeatureMatrix m;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name(trim(header[c]));
    if (name == column::date) {
      date_col = c;
    } else if (name == column::label) {
      label_col = c;
    } else {
      feature_cols.push_back(c);
      m.column_names.push_back(name);
    }
  }
  m.values = Matrix(0, feature_cols.size());
  std::vector<double> row(feature_cols.size());
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::string where = "feature CSV line " + std::to_string(li + 1) + ": ";
    const auto cells = split_csv_record(lines[li]);
    if (cells.size() != header.size()) {
      throw FormatError(where + "expected " + std::to_string(header.size()) + " cells, found " +
                        std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      const std::string_view cell = trim(cells[feature_cols[j]]);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw FormatError(where + "cannot parse '" + std::string(cell) + "' in column " +
                          m.column_names[j]);
      }
      row[j] = v;
    }
    m.values.append_row(row);
    Date date{};
    if (date_col) {
      auto d = parse_iso_date(trim(cells[*date_col]));
      if (!d) throw FormatError(where + "bad date '" + cells[*date_col] + "'");
      date = *d;
    }
    m.dates.push_back(date);
    int label = 0;
    if (label_col) {
      const auto cell = trim(cells[*label_col]);
      if (cell == "1") {
        label = 1;
      } else if (cell != "0") {
        throw FormatError(where + "label must be 0 or 1, got '" + std::string(cell) + "'");
      }
    }
    m.labels.push_back(label);
  }
  return m;
}

}  // namespace trendcast

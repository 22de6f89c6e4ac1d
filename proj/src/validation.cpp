#include "trendcast/validation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "trendcast/error.hpp"
#include "trendcast/random.hpp"

namespace trendcast {

namespace {

FoldResult evaluate_fold(const FeatureMatrix& data,
                         const std::vector<std::vector<std::size_t>>& folds, std::size_t fold,
                         const ModelParams& params, std::uint64_t seed) {
  std::vector<char> held_out(data.rows(), 0);
  for (std::size_t i : folds[fold]) held_out[i] = 1;
  std::vector<std::size_t> train_idx;
  train_idx.reserve(data.rows() - folds[fold].size());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (!held_out[i]) train_idx.push_back(i);
  }

  FoldResult result;
  result.fold = fold;
  result.train_rows = train_idx.size();
  result.test_rows = folds[fold].size();

  const FeatureMatrix train = data.select_rows(train_idx);
  const std::size_t ups = static_cast<std::size_t>(
      std::accumulate(train.labels.begin(), train.labels.end(), 0));
  if (ups == 0 || ups == train.rows()) {
    result.skipped = true;
    return result;
  }

  const ScaledMatrix scaled_train = min_max_scale(train, train);
  const FeatureMatrix scaled_test = scaled_train.state.transform(data.select_rows(folds[fold]));
  const TrainedModel model =
      fit_model(params, scaled_train.matrix.values, scaled_train.matrix.labels, seed);
  result.confusion = confusion(scaled_test.labels, predict_all(model, scaled_test.values));
  result.metrics = evaluate(result.confusion);
  return result;
}

MetricSummary summarize(const std::vector<FoldResult>& folds, Metric MetricSet::*field) {
  MetricSummary s;
  std::size_t count = 0;
  for (const auto& f : folds) {
    if (f.skipped) continue;
    s.mean += (f.metrics.*field).value;
    ++count;
  }
  if (count == 0) return s;
  s.mean /= static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (const auto& f : folds) {
      if (f.skipped) continue;
      const double d = (f.metrics.*field).value - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(count - 1));
  }
  return s;
}

CVResult finish(const ModelParams& params, std::size_t k, std::vector<FoldResult> folds) {
  CVResult r;
  r.params = params;
  r.k = k;
  r.folds = std::move(folds);
  for (const auto& f : r.folds) r.evaluated_folds += f.skipped ? 0 : 1;
  r.accuracy = summarize(r.folds, &MetricSet::accuracy);
  r.precision = summarize(r.folds, &MetricSet::precision);
  r.recall = summarize(r.folds, &MetricSet::recall);
  r.f1 = summarize(r.folds, &MetricSet::f1);
  return r;
}

std::vector<CVResult> run_cv_tasks(const FeatureMatrix& data, const std::vector<ModelParams>& grid,
                                   const CVOptions& options, bool parallel) {
  data.check_shape();
  const auto folds = make_folds(data.rows(), options.k, options.mode, options.seed);
  const std::size_t k = folds.size();
  std::vector<std::uint64_t> point_keys;
  point_keys.reserve(grid.size());
  for (const auto& p : grid) point_keys.push_back(fnv1a(describe(p)));

  const std::size_t n_tasks = grid.size() * k;
  std::vector<FoldResult> results(n_tasks);
  std::vector<std::exception_ptr> errors(n_tasks);
  const auto run = [&](std::size_t task) {
    const std::size_t point = task / k;
    const std::size_t fold = task % k;
    try {
      results[task] = evaluate_fold(data, folds, fold, grid[point],
                                    derive_seed(options.seed, point_keys[point], fold));
    } catch (...) {
      errors[task] = std::current_exception();
    }
  };
  if (parallel) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_tasks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < n; ++t) run(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < n_tasks; ++t) run(t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<CVResult> out;
  out.reserve(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::vector<FoldResult> point_folds(results.begin() + static_cast<std::ptrdiff_t>(p * k),
                                        results.begin() + static_cast<std::ptrdiff_t>((p + 1) * k));
    out.push_back(finish(grid[p], k, std::move(point_folds)));
  }
  return out;
}

GridSearchResult search(const FeatureMatrix& train, const std::vector<ModelParams>& grid,
                        const CVOptions& options, SelectionMetric metric, bool parallel) {
  if (grid.empty()) throw ConfigError("hyperparameter grid is empty");
  for (const auto& p : grid) validate_params(p);
  GridSearchResult result;
  result.evaluated = run_cv_tasks(train, grid, options, parallel);
  for (std::size_t i = 1; i < result.evaluated.size(); ++i) {
    if (summary_value(result.evaluated[i], metric) >
        summary_value(result.evaluated[result.best_index], metric)) {
      result.best_index = i;
    }
  }
  return result;
}

}  // namespace

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, SplitMode mode,
                                                 std::uint64_t seed) {
  if (k < 2) throw ConfigError("k-fold cross-validation needs k >= 2");
  if (n < k) {
    throw DataError("cannot make " + std::to_string(k) + " folds from " + std::to_string(n) +
                    " rows");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == SplitMode::random) {
    Rng rng(derive_seed(seed, fnv1a("folds")));
    rng.shuffle(std::span<std::size_t>(order));
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

CVResult kfold_cv(const FeatureMatrix& train, const ModelParams& params,
                  const CVOptions& options) {
  validate_params(params);
  return run_cv_tasks(train, {params}, options, true).front();
}

double summary_value(const CVResult& result, SelectionMetric metric) noexcept {
  switch (metric) {
    case SelectionMetric::accuracy:
      return result.accuracy.mean;
    case SelectionMetric::precision:
      return result.precision.mean;
    case SelectionMetric::recall:
      return result.recall.mean;
    case SelectionMetric::f1:
      return result.f1.mean;
  }
  return result.accuracy.mean;
}

GridSearchResult grid_search(const FeatureMatrix& train, const std::vector<ModelParams>& grid,
                             const CVOptions& options, SelectionMetric metric) {
  return search(train, grid, options, metric, true);
}

GridSearchResult grid_search_serial(const FeatureMatrix& train,
                                    const std::vector<ModelParams>& grid,
                                    const CVOptions& options, SelectionMetric metric) {
  return search(train, grid, options, metric, false);
}

std::vector<ModelParams> expand_grid(const LogRegGrid& grid) {
  std::vector<ModelParams> out;
  for (double lr : grid.learning_rate) {
    for (double l2 : grid.l2_penalty) {
      for (std::size_t epochs : grid.epochs) out.emplace_back(LogRegParams{lr, l2, epochs});
    }
  }
  return out;
}

std::vector<ModelParams> expand_grid(const ForestGrid& grid) {
  std::vector<ModelParams> out;
  for (std::size_t trees : grid.n_trees) {
    for (int depth : grid.max_depth) {
      for (const auto& fps : grid.features_per_split) {
        for (std::size_t leaf : grid.min_samples_leaf) {
          for (bool boot : grid.bootstrap) {
            out.emplace_back(ForestParams{trees, depth, leaf, fps, boot});
          }
        }
      }
    }
  }
  return out;
}

std::vector<ModelParams> expand_grid(const BoostingGrid& grid) {
  std::vector<ModelParams> out;
  for (std::size_t rounds : grid.n_rounds) {
    for (double shrink : grid.shrinkage) {
      for (int depth : grid.max_depth) out.emplace_back(BoostingParams{rounds, shrink, depth, 1});
    }
  }
  return out;
}

}  // namespace trendcast

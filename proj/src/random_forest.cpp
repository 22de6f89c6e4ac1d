#include "trendcast/random_forest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "trendcast/error.hpp"
#include "trendcast/random.hpp"

namespace trendcast {

std::size_t FeaturesPerSplit::resolve(std::size_t n_features) const noexcept {
  if (n_features == 0) return 0;
  std::size_t k = n_features;
  switch (kind) {
    case Kind::sqrt:
      k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features))));
      break;
    case Kind::all:
      break;
    case Kind::fixed:
      k = count;
      break;
  }
  return std::clamp<std::size_t>(k, 1, n_features);
}

std::string FeaturesPerSplit::to_string() const {
  switch (kind) {
    case Kind::sqrt:
      return "sqrt";
    case Kind::all:
      return "all";
    case Kind::fixed:
      break;
  }
  return std::to_string(count);
}

std::optional<FeaturesPerSplit> FeaturesPerSplit::parse(std::string_view text) {
  if (text == "sqrt") return sqrt();
  if (text == "all") return all();
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || n == 0) {
    return std::nullopt;
  }
  return fixed(n);
}

double RandomForestModel::predict_proba(std::span<const double> x) const {
  std::size_t up = 0;
  for (const auto& t : trees) up += static_cast<std::size_t>(t.predict(x));
  return static_cast<double>(up) / static_cast<double>(trees.size());
}

RandomForestModel train_rf(const Matrix& x, std::span<const int> y, const ForestParams& params,
                           std::uint64_t seed) {
  if (params.n_trees == 0) throw ConfigError("random forest needs at least one tree");
  if (x.rows() == 0) throw DataError("random forest: no training rows");
  RandomForestModel model;
  model.params = params;
  model.seed = seed;
  model.trees.reserve(params.n_trees);

  const std::size_t n = x.rows();
  const TreeParams tree_params{params.max_depth, params.min_samples_leaf};
  const std::size_t per_split = params.features_per_split.resolve(x.cols());
  std::vector<std::size_t> sample(n);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(seed, t));
    for (std::size_t i = 0; i < n; ++i) {
      sample[i] = params.bootstrap ? rng.uniform_below(n) : i;
    }
    model.trees.push_back(
        train_classification_tree(x, y, sample, tree_params, FeatureSampling{per_split, &rng}));
  }
  return model;
}

}  // namespace trendcast

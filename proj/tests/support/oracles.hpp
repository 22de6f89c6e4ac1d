#pragma once

// Brute-force reference evaluations used as test oracles. Written directly
// from the formulas, independent of the library's implementation paths.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "trendcast/metrics.hpp"

namespace oracle {

/// Mean of closes[i-n+1 .. i].
double sma(const std::vector<double>& closes, std::size_t i, std::size_t n);

/// 100 - 100 / (1 + avg_up / avg_down) over the n changes ending at i, with
/// the flat (50), no-loss (100) and no-gain (0) conventions.
double rsi(const std::vector<double>& closes, std::size_t i, std::size_t n);

/// 100 * (close - lowest low) / (highest high - lowest low); 50 when flat.
double pct_k(const std::vector<double>& highs, const std::vector<double>& lows,
             const std::vector<double>& closes, std::size_t i, std::size_t n);

/// Pearson r by the covariance / (sigma_x sigma_y) definition in long double.
/// Returns NaN when either column is constant.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct Counts {
  double accuracy, precision, recall, f1;
};

/// Metrics by counting matching positions directly (0 on empty denominators).
Counts direct_metrics(std::span<const int> truth, std::span<const int> pred);

/// Central finite difference of f along coordinate j of x.
double central_difference(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x, std::size_t j, double h);

double relative_error(double a, double b);

}  // namespace oracle

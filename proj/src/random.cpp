#include "trendcast/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace trendcast {

std::size_t Rng::uniform_below(std::size_t bound) {
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t v = 0;
  do {
    v = next_u64();
  } while (v >= limit);
  return static_cast<std::size_t>(v % b);
}

double Rng::normal() {
  double u1 = 0.0;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace trendcast

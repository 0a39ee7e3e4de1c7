#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace dcres {

// Mean and 95% confidence-interval half-width (normal approximation,
// 1.96 * sample SD / sqrt(n)). Half-width is 0 for a single sample or zero
// variance. Throws on an empty input.
inline std::pair<double, double> aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate of empty sample");
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double sd = std::sqrt(sq / static_cast<double>(n - 1));
  return {mean, 1.96 * sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace dcres

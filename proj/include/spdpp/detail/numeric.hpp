#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace spdpp::detail {

// 1 / (1 + e^-t) without overflow for either sign of t.
inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// log(1 + e^t).
inline double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace spdpp::detail

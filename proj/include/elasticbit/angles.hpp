#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace elasticbit {

/// Reduces an angle to the principal branch (-pi, pi].
inline double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

/// Nearest-branch continuation of an ordered angle sequence.
/// Returns the unwrapped angles; the first entry is kept as-is.
inline std::vector<double> unwrap_angles(const std::vector<double>& wrapped) {
  std::vector<double> out;
  out.reserve(wrapped.size());
  if (wrapped.empty()) return out;
  out.push_back(wrapped.front());
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    out.push_back(out.back() + wrap_angle(wrapped[i] - wrapped[i - 1]));
  }
  return out;
}

}  // namespace elasticbit

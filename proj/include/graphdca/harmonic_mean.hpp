#pragma once

#include <span>

namespace graphdca {

/// Harmonic mean; zero if any value is zero (the limit of the mean).
inline double harmonic_mean(std::span<const double> values)
{
  if (values.empty()) return 0.0;
  double inv = 0.0;
  for (double v : values) {
    if (v <= 0.0) return 0.0;
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

} // namespace graphdca

#pragma once

// Plain-double reference implementations used to cross-check the log-domain
// block machinery at N <= 12, where explicit eigenvalue lists are cheap.
// These deliberately share no code with the block versions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mqc/spectra.hpp"

namespace naive {

inline std::vector<double> expand_sorted(const mqc::DegenerateSpectrum& spec) {
  std::vector<double> values;
  for (const auto& block : spec.blocks) {
    const auto count = block.mult.convert_to<std::size_t>();
    for (std::size_t i = 0; i < count; ++i) values.push_back(block.value.to_double());
  }
  std::sort(values.begin(), values.end());
  return values;
}

inline double paired_diff_norm(const std::vector<double>& sorted, std::size_t r) {
  double sum = 0.0;
  const std::size_t d = sorted.size();
  for (std::size_t i = 0; i < r; ++i) {
    const double diff = sorted[d - 1 - i] - sorted[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

inline double aligned_dot(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t r) {
  double sum = 0.0;
  const std::size_t d = a.size();
  for (std::size_t i = 0; i < r; ++i) {
    sum += a[i] * b[i] + a[d - 1 - i] * b[d - 1 - i];
  }
  return sum;
}

}  // namespace naive

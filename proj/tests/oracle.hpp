#pragma once

// Test-only brute-force oracle for the threshold sweep: evaluates every grid
// point exhaustively and independently of the sweep implementation.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "aggfit/errors.hpp"

namespace aggfit_test {

struct OracleResult {
  double threshold = 0.0;
  std::uint64_t nok = 0;
};

inline OracleResult brute_force_threshold_oracle(
    std::span<const double> values, std::span<const std::uint8_t> is_lower,
    std::span<const double> grid) {
  if (grid.empty()) {
    throw aggfit::UsageError("brute_force_threshold_oracle: empty grid");
  }
  OracleResult best;
  best.nok = std::numeric_limits<std::uint64_t>::max();
  for (const double t : grid) {
    std::uint64_t nok = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
      const bool below = values[r] <= t;
      if (below != static_cast<bool>(is_lower[r])) ++nok;
    }
    if (nok < best.nok) {
      best.threshold = t;
      best.nok = nok;
    }
  }
  return best;
}

/// The grid the sweep scans: every m + i*step below compare, then compare.
inline std::vector<double> threshold_grid(double m, double compare,
                                          double step) {
  std::vector<double> grid;
  for (std::uint64_t i = 0;; ++i) {
    const double t = m + static_cast<double>(i) * step;
    if (step <= 0.0 || !(t < compare)) {
      grid.push_back(compare);
      return grid;
    }
    grid.push_back(t);
  }
}

}  // namespace aggfit_test

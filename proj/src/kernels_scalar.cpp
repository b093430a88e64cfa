#include <cstdint>
#include <limits>
#include <vector>

#include "aggfit/kernels.hpp"

namespace aggfit::kernels::scalar {

void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out) {
  const std::size_t rows = out.size();
  const std::size_t cols = columns.size();
  std::vector<double> row(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) row[c] = columns[c][r];
    out[r] = aggregate(spec, row).value;
  }
}

// The grid is m_point + i*step for every point below compare, then compare
// itself: the scan always ends exactly at the upper bound.
SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step) {
  const std::size_t n = values.size();
  SweepHit best;
  best.nok = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 0;; ++i) {
    double t = m_point + static_cast<double>(i) * step;
    const bool last = step <= 0.0 || !(t < compare);
    if (last) t = compare;
    std::uint64_t nok = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const bool below = values[r] <= t;
      nok += below != static_cast<bool>(is_lower[r]);
    }
    if (nok < best.nok) {
      best.threshold = t;
      best.nok = nok;
      best.ok = n - nok;
    }
    if (last) break;
  }
  return best;
}

}  // namespace aggfit::kernels::scalar

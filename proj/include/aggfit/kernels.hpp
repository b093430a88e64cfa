#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aggfit/operators.hpp"

// Batch kernels for the two hot loops of the fitter: evaluating an operator
// over every instance of a dataset, and scanning a threshold grid for the
// minimum error count. Each kernel has a scalar reference implementation and,
// for the fold-style families, an AVX2 variant selected at runtime. The AVX2
// variants keep one instance per lane and apply the same operation sequence
// as the scalar fold, so both paths produce bit-identical results.

namespace aggfit::kernels {

/// Result of scanning the threshold grid: t = m_point + i*step for every
/// point below compare, then compare itself. Keeps the first grid point
/// attaining the minimum mismatch count.
struct SweepHit {
  double threshold = 0.0;
  std::uint64_t nok = 0;
  std::uint64_t ok = 0;
};

enum class Isa { Scalar, Avx2 };

/// True when the running CPU supports AVX2 and the AVX2 kernels were built.
bool avx2_available();
/// ISA the dispatched entry points currently use.
Isa active_isa();
/// Force a specific ISA (tests); Avx2 is ignored when unavailable.
void force_isa(Isa isa);
void reset_isa();

namespace scalar {

/// Reference: per row, gather the memberships and apply aggregate().
void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out);

SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step);

}  // namespace scalar

namespace avx2 {

// Defined only for the fold-style families (everything except Dombi);
// callers go through the dispatched entry points below.
void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out);

SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step);

/// True when the family has an AVX2 batch kernel.
bool has_batch_kernel(OperatorFamily family);

}  // namespace avx2

/// Dispatched entry points. `columns` is column-major: columns[c][r] is the
/// membership of instance r in attribute c; all columns share out.size() rows.
void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out);

SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step);

}  // namespace aggfit::kernels

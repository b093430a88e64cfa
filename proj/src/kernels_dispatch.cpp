#include <atomic>
#include <optional>

#include "aggfit/kernels.hpp"

namespace aggfit::kernels {
namespace {

std::atomic<int> g_forced_isa{-1};

bool cpu_has_avx2() {
#if defined(AGGFIT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Isa active_isa() {
  const int forced = g_forced_isa.load(std::memory_order_relaxed);
  if (forced == static_cast<int>(Isa::Scalar)) return Isa::Scalar;
  if (forced == static_cast<int>(Isa::Avx2) && avx2_available())
    return Isa::Avx2;
  if (forced < 0 && avx2_available()) return Isa::Avx2;
  return Isa::Scalar;
}

void force_isa(Isa isa) {
  g_forced_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced_isa.store(-1, std::memory_order_relaxed); }

#if !defined(AGGFIT_HAVE_AVX2)
namespace avx2 {

bool has_batch_kernel(OperatorFamily) { return false; }

void aggregate_batch(const OperatorSpec&, std::span<const std::vector<double>>,
                     std::span<double>) {
  throw UsageError("AVX2 kernels not built on this platform");
}

SweepHit sweep_min_nok(std::span<const double>, std::span<const std::uint8_t>,
                       double, double, double) {
  throw UsageError("AVX2 kernels not built on this platform");
}

}  // namespace avx2
#endif

void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out) {
  if (columns.empty()) throw UsageError("aggregate_batch: no input columns");
  for (const auto& col : columns) {
    if (col.size() != out.size()) {
      throw UsageError("aggregate_batch: column/output size mismatch");
    }
  }
  if (active_isa() == Isa::Avx2 && avx2::has_batch_kernel(spec.family)) {
    avx2::aggregate_batch(spec, columns, out);
  } else {
    scalar::aggregate_batch(spec, columns, out);
  }
}

SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step) {
  if (values.size() != is_lower.size()) {
    throw UsageError("sweep_min_nok: values/flags size mismatch");
  }
  if (active_isa() == Isa::Avx2) {
    return avx2::sweep_min_nok(values, is_lower, m_point, compare, step);
  }
  return scalar::sweep_min_nok(values, is_lower, m_point, compare, step);
}

}  // namespace aggfit::kernels

// Times the scalar and AVX2 batch kernels on a synthetic workload roughly
// the size of one full fit: aggregate a 100k x 16 matrix per family, then
// run a 1001-point threshold sweep over 100k instances.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "aggfit/fitter.hpp"
#include "aggfit/kernels.hpp"
#include "aggfit/operators.hpp"

using namespace aggfit;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

int main() {
  constexpr std::size_t kRows = 100000;
  constexpr std::size_t kCols = 16;

  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  std::vector<std::vector<double>> columns(kCols, std::vector<double>(kRows));
  for (auto& col : columns) {
    for (double& x : col) x = unit(eng);
  }
  std::vector<double> out(kRows);

  std::printf("aggregate_batch, %zu rows x %zu columns (ms per pass)\n",
              kRows, kCols);
  std::printf("%-22s %10s %10s %8s\n", "family", "scalar", "avx2", "speedup");
  for (const OperatorFamily family : full_roster()) {
    const OperatorSpec spec =
        is_parametrized(family)
            ? OperatorSpec(family, default_param_grid(family).back())
            : OperatorSpec(family);

    auto t0 = Clock::now();
    kernels::scalar::aggregate_batch(spec, columns, out);
    const double scalar_ms = ms_since(t0);

    if (!kernels::avx2_available() ||
        !kernels::avx2::has_batch_kernel(family)) {
      std::printf("%-22s %10.2f %10s %8s\n",
                  std::string(family_id(family)).c_str(), scalar_ms, "-", "-");
      continue;
    }
    t0 = Clock::now();
    kernels::avx2::aggregate_batch(spec, columns, out);
    const double avx2_ms = ms_since(t0);
    std::printf("%-22s %10.2f %10.2f %7.1fx\n",
                std::string(family_id(family)).c_str(), scalar_ms, avx2_ms,
                scalar_ms / avx2_ms);
  }

  std::vector<double> values(kRows);
  std::vector<std::uint8_t> lower(kRows);
  for (std::size_t i = 0; i < kRows; ++i) {
    values[i] = unit(eng);
    lower[i] = eng() % 2;
  }
  const double step = 1.0 / 1000.0;

  auto t0 = Clock::now();
  const auto s = kernels::scalar::sweep_min_nok(values, lower, 0.0, 1.0, step);
  const double scalar_ms = ms_since(t0);
  std::printf("\nsweep_min_nok, 1001 grid points x %zu instances\n", kRows);
  std::printf("%-22s %10.2f ms (nok %llu)\n", "scalar", scalar_ms,
              static_cast<unsigned long long>(s.nok));
  if (kernels::avx2_available()) {
    t0 = Clock::now();
    const auto v = kernels::avx2::sweep_min_nok(values, lower, 0.0, 1.0, step);
    const double avx2_ms = ms_since(t0);
    std::printf("%-22s %10.2f ms (nok %llu, %.1fx)\n", "avx2", avx2_ms,
                static_cast<unsigned long long>(v.nok), scalar_ms / avx2_ms);
  }
  return 0;
}

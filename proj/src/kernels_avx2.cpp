// AVX2 variants of the batch kernels. One dataset instance per lane; every
// lane applies exactly the operation sequence of the scalar fold, so results
// are bit-identical to the scalar reference (the build disables FP
// contraction). Only reached through the dispatcher after a CPUID check.

#include "aggfit/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cstdint>
#include <limits>
#include <vector>

namespace aggfit::kernels::avx2 {
namespace {

struct MinFold {
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const { return _mm256_min_pd(a, b); }
  static __m256d finish(__m256d acc) { return acc; }
};

struct MaxFold {
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const { return _mm256_max_pd(a, b); }
  static __m256d finish(__m256d acc) { return acc; }
};

struct ProductFold {
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const { return _mm256_mul_pd(a, b); }
  static __m256d finish(__m256d acc) { return acc; }
};

// 1 - prod(1 - x_i)
struct AlgebraicSumFold {
  static __m256d init(__m256d x) {
    return _mm256_sub_pd(_mm256_set1_pd(1.0), x);
  }
  __m256d step(__m256d acc, __m256d x) const {
    return _mm256_mul_pd(acc, _mm256_sub_pd(_mm256_set1_pd(1.0), x));
  }
  static __m256d finish(__m256d acc) {
    return _mm256_sub_pd(_mm256_set1_pd(1.0), acc);
  }
};

struct EinsteinProductFold {
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const {
    const __m256d num = _mm256_mul_pd(a, b);
    const __m256d den = _mm256_sub_pd(
        _mm256_set1_pd(2.0), _mm256_sub_pd(_mm256_add_pd(a, b), num));
    return _mm256_min_pd(_mm256_div_pd(num, den), _mm256_set1_pd(1.0));
  }
  static __m256d finish(__m256d acc) { return acc; }
};

struct EinsteinSumFold {
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const {
    const __m256d q = _mm256_div_pd(
        _mm256_add_pd(a, b),
        _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(a, b)));
    return _mm256_min_pd(q, _mm256_set1_pd(1.0));
  }
  static __m256d finish(__m256d acc) { return acc; }
};

struct HamacherProductFold {
  double gamma;
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const {
    const __m256d num = _mm256_mul_pd(a, b);
    const __m256d mixed = _mm256_sub_pd(_mm256_add_pd(a, b), num);
    const __m256d den = _mm256_add_pd(
        _mm256_set1_pd(gamma),
        _mm256_mul_pd(_mm256_set1_pd(1.0 - gamma), mixed));
    const __m256d q =
        _mm256_min_pd(_mm256_div_pd(num, den), _mm256_set1_pd(1.0));
    // gamma 0 at (0,0): denominator 0 means the product is 0
    const __m256d zero = _mm256_setzero_pd();
    const __m256d degenerate = _mm256_cmp_pd(den, zero, _CMP_EQ_OQ);
    return _mm256_blendv_pd(q, zero, degenerate);
  }
  static __m256d finish(__m256d acc) { return acc; }
};

struct HamacherSumFold {
  double gamma;
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const {
    const __m256d ab = _mm256_mul_pd(a, b);
    const __m256d den = _mm256_sub_pd(
        _mm256_set1_pd(1.0),
        _mm256_mul_pd(_mm256_set1_pd(1.0 - gamma), ab));
    const __m256d num = _mm256_sub_pd(
        _mm256_add_pd(a, b),
        _mm256_mul_pd(_mm256_set1_pd(2.0 - gamma), ab));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d q = _mm256_min_pd(_mm256_div_pd(num, den), one);
    // gamma 0 at (1,1): denominator 0 means the sum saturates at 1
    const __m256d degenerate =
        _mm256_cmp_pd(den, _mm256_setzero_pd(), _CMP_EQ_OQ);
    return _mm256_blendv_pd(q, one, degenerate);
  }
  static __m256d finish(__m256d acc) { return acc; }
};

struct DuboisUnionFold {
  double alpha;
  static __m256d init(__m256d x) { return x; }
  __m256d step(__m256d a, __m256d b) const {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d ca = _mm256_sub_pd(one, a);
    const __m256d cb = _mm256_sub_pd(one, b);
    const __m256d m =
        _mm256_max_pd(_mm256_max_pd(ca, cb), _mm256_set1_pd(alpha));
    const __m256d q = _mm256_max_pd(
        _mm256_sub_pd(one, _mm256_div_pd(_mm256_mul_pd(ca, cb), m)),
        _mm256_setzero_pd());
    const __m256d degenerate =
        _mm256_cmp_pd(m, _mm256_setzero_pd(), _CMP_EQ_OQ);
    return _mm256_blendv_pd(q, one, degenerate);
  }
  static __m256d finish(__m256d acc) { return acc; }
};

template <class Fold>
void run_fold(const Fold& fold, std::span<const std::vector<double>> columns,
              std::span<double> out, std::size_t* done) {
  const std::size_t rows = out.size();
  const std::size_t cols = columns.size();
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d acc = Fold::init(_mm256_loadu_pd(columns[0].data() + r));
    for (std::size_t c = 1; c < cols; ++c) {
      acc = fold.step(acc, _mm256_loadu_pd(columns[c].data() + r));
    }
    _mm256_storeu_pd(out.data() + r, Fold::finish(acc));
  }
  *done = r;
}

// Averaging operators need the min, max and sum of each row.
enum class Blend { FuzzyAnd, FuzzyOr, ConvexMin, ConvexMax };

void run_averaging(Blend blend, double gamma,
                   std::span<const std::vector<double>> columns,
                   std::span<double> out, std::size_t* done) {
  const std::size_t rows = out.size();
  const std::size_t cols = columns.size();
  const __m256d gv = _mm256_set1_pd(gamma);
  const __m256d cgv = _mm256_set1_pd(1.0 - gamma);
  const __m256d nv = _mm256_set1_pd(static_cast<double>(cols));
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d vmin = _mm256_loadu_pd(columns[0].data() + r);
    __m256d vmax = vmin;
    __m256d vsum = vmin;
    for (std::size_t c = 1; c < cols; ++c) {
      const __m256d x = _mm256_loadu_pd(columns[c].data() + r);
      vmin = _mm256_min_pd(vmin, x);
      vmax = _mm256_max_pd(vmax, x);
      vsum = _mm256_add_pd(vsum, x);
    }
    const __m256d mean = _mm256_div_pd(vsum, nv);
    __m256d res;
    switch (blend) {
      case Blend::FuzzyAnd:
        res = _mm256_add_pd(_mm256_mul_pd(gv, vmin), _mm256_mul_pd(cgv, mean));
        break;
      case Blend::FuzzyOr:
        res = _mm256_add_pd(_mm256_mul_pd(gv, vmax), _mm256_mul_pd(cgv, mean));
        break;
      case Blend::ConvexMin:
        res = _mm256_add_pd(_mm256_mul_pd(gv, vmin), _mm256_mul_pd(cgv, vmax));
        break;
      default:
        res = _mm256_add_pd(_mm256_mul_pd(gv, vmax), _mm256_mul_pd(cgv, vmin));
        break;
    }
    _mm256_storeu_pd(out.data() + r, _mm256_min_pd(res, _mm256_set1_pd(1.0)));
  }
  *done = r;
}

// Remaining rows (fewer than one vector) go through the scalar reference.
void finish_tail(const OperatorSpec& spec,
                 std::span<const std::vector<double>> columns,
                 std::span<double> out, std::size_t first) {
  const std::size_t rows = out.size();
  const std::size_t cols = columns.size();
  std::vector<double> row(cols);
  for (std::size_t r = first; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) row[c] = columns[c][r];
    out[r] = aggregate(spec, row).value;
  }
}

}  // namespace

bool has_batch_kernel(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::DombiIntersection:
    case OperatorFamily::DombiUnion:
      return false;  // pow-based; stays on the scalar path
    default:
      return true;
  }
}

void aggregate_batch(const OperatorSpec& spec,
                     std::span<const std::vector<double>> columns,
                     std::span<double> out) {
  validate_spec(spec);
  const double g = spec.param.value_or(0.0);
  std::size_t done = 0;
  switch (spec.family) {
    case OperatorFamily::Min:
      run_fold(MinFold{}, columns, out, &done);
      break;
    case OperatorFamily::Max:
      run_fold(MaxFold{}, columns, out, &done);
      break;
    case OperatorFamily::AlgebraicProduct:
      run_fold(ProductFold{}, columns, out, &done);
      break;
    case OperatorFamily::AlgebraicSum:
      run_fold(AlgebraicSumFold{}, columns, out, &done);
      break;
    case OperatorFamily::EinsteinProduct:
      run_fold(EinsteinProductFold{}, columns, out, &done);
      break;
    case OperatorFamily::EinsteinSum:
      run_fold(EinsteinSumFold{}, columns, out, &done);
      break;
    case OperatorFamily::HamacherProduct:
      run_fold(HamacherProductFold{g}, columns, out, &done);
      break;
    case OperatorFamily::HamacherSum:
      run_fold(HamacherSumFold{g}, columns, out, &done);
      break;
    case OperatorFamily::DuboisUnion:
      run_fold(DuboisUnionFold{g}, columns, out, &done);
      break;
    case OperatorFamily::FuzzyAnd:
      run_averaging(Blend::FuzzyAnd, g, columns, out, &done);
      break;
    case OperatorFamily::FuzzyOr:
      run_averaging(Blend::FuzzyOr, g, columns, out, &done);
      break;
    case OperatorFamily::ConvexMin:
      run_averaging(Blend::ConvexMin, g, columns, out, &done);
      break;
    case OperatorFamily::ConvexMax:
      run_averaging(Blend::ConvexMax, g, columns, out, &done);
      break;
    default:
      throw UsageError("no AVX2 kernel for this family");
  }
  finish_tail(spec, columns, out, done);
}

SweepHit sweep_min_nok(std::span<const double> values,
                       std::span<const std::uint8_t> is_lower, double m_point,
                       double compare, double step) {
  const std::size_t n = values.size();
  const std::size_t blocks = n / 4;

  // Lower-class flags packed to the 4-bit pattern movemask produces.
  std::vector<int> lower_bits(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    int bits = 0;
    for (int lane = 0; lane < 4; ++lane) {
      bits |= (is_lower[4 * b + lane] ? 1 : 0) << lane;
    }
    lower_bits[b] = bits;
  }

  SweepHit best;
  best.nok = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 0;; ++i) {
    double t = m_point + static_cast<double>(i) * step;
    const bool last = step <= 0.0 || !(t < compare);
    if (last) t = compare;
    const __m256d tv = _mm256_set1_pd(t);
    std::uint64_t nok = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const __m256d v = _mm256_loadu_pd(values.data() + 4 * b);
      const int below = _mm256_movemask_pd(_mm256_cmp_pd(v, tv, _CMP_LE_OQ));
      nok += static_cast<unsigned>(__builtin_popcount(
          static_cast<unsigned>(below ^ lower_bits[b])));
    }
    for (std::size_t r = 4 * blocks; r < n; ++r) {
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

}  // namespace aggfit::kernels::avx2

#endif  // __AVX2__

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "aggfit/dataset_io.hpp"
#include "aggfit/fitter.hpp"
#include "aggfit/kernels.hpp"
#include "aggfit/operators.hpp"

using namespace aggfit;

namespace {

std::vector<std::vector<double>> random_columns(std::mt19937_64& eng,
                                                std::size_t cols,
                                                std::size_t rows) {
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  std::vector<std::vector<double>> out(cols, std::vector<double>(rows));
  for (auto& col : out) {
    for (double& x : col) x = unit(eng);
  }
  return out;
}

std::vector<OperatorSpec> kernel_specs() {
  std::vector<OperatorSpec> specs;
  for (const OperatorFamily f : full_roster()) {
    if (!is_parametrized(f)) {
      specs.emplace_back(f);
      continue;
    }
    switch (f) {
      case OperatorFamily::HamacherProduct:
      case OperatorFamily::HamacherSum:
        for (const double g : {0.0, 1.0, 3.0}) specs.emplace_back(f, g);
        break;
      case OperatorFamily::DombiIntersection:
      case OperatorFamily::DombiUnion:
        for (const double l : {0.5, 2.0, 50.0}) specs.emplace_back(f, l);
        break;
      default:
        for (const double g : {0.0, 0.4, 1.0}) specs.emplace_back(f, g);
        break;
    }
  }
  return specs;
}

}  // namespace

TEST_CASE("scalar batch kernel matches per-row aggregate() bit for bit") {
  std::mt19937_64 eng(7);
  for (const OperatorSpec& spec : kernel_specs()) {
    for (const std::size_t rows : {std::size_t{1}, std::size_t{5},
                                   std::size_t{64}}) {
      const auto cols = random_columns(eng, 1 + eng() % 19, rows);
      std::vector<double> batch(rows);
      kernels::scalar::aggregate_batch(spec, cols, batch);
      std::vector<double> row(cols.size());
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) row[c] = cols[c][r];
        REQUIRE(batch[r] == aggregate(spec, row).value);
      }
    }
  }
}

TEST_CASE("AVX2 batch kernels are bit-identical to the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this host; skipping");
    return;
  }
  std::mt19937_64 eng(11);
  for (const OperatorSpec& spec : kernel_specs()) {
    if (!kernels::avx2::has_batch_kernel(spec.family)) continue;
    CAPTURE(family_id(spec.family));
    // sizes straddle the 4-lane boundary, including scalar-only tails
    for (const std::size_t rows : {std::size_t{1}, std::size_t{3},
                                   std::size_t{4}, std::size_t{7},
                                   std::size_t{32}, std::size_t{233}}) {
      const auto cols = random_columns(eng, 1 + eng() % 19, rows);
      std::vector<double> scalar_out(rows), avx2_out(rows);
      kernels::scalar::aggregate_batch(spec, cols, scalar_out);
      kernels::avx2::aggregate_batch(spec, cols, avx2_out);
      for (std::size_t r = 0; r < rows; ++r) {
        REQUIRE(scalar_out[r] == avx2_out[r]);
      }
    }
  }
}

TEST_CASE("AVX2 sweep kernel matches the scalar sweep exactly") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this host; skipping");
    return;
  }
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + eng() % 97;
    std::vector<double> values(n);
    std::vector<std::uint8_t> lower(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = unit(eng);
      lower[i] = eng() % 2;
    }
    const double m = 0.1 * unit(eng);
    const double compare = m + unit(eng);
    const double step = (compare - m) / static_cast<double>(1 + eng() % 500);
    const auto s =
        kernels::scalar::sweep_min_nok(values, lower, m, compare, step);
    const auto v =
        kernels::avx2::sweep_min_nok(values, lower, m, compare, step);
    REQUIRE(s.threshold == v.threshold);
    REQUIRE(s.nok == v.nok);
    REQUIRE(s.ok == v.ok);
  }
}

TEST_CASE("dispatch honours forced ISA and recovers") {
  std::mt19937_64 eng(17);
  const auto cols = random_columns(eng, 6, 41);
  std::vector<double> a(41), b(41);
  const OperatorSpec spec(OperatorFamily::EinsteinProduct);

  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  kernels::aggregate_batch(spec, cols, a);

  kernels::reset_isa();
  kernels::aggregate_batch(spec, cols, b);
  for (std::size_t r = 0; r < a.size(); ++r) REQUIRE(a[r] == b[r]);

  if (kernels::avx2_available()) {
    kernels::force_isa(kernels::Isa::Avx2);
    CHECK(kernels::active_isa() == kernels::Isa::Avx2);
    kernels::reset_isa();
  }
}

TEST_CASE("Dombi families always dispatch to the scalar path") {
  CHECK_FALSE(
      kernels::avx2::has_batch_kernel(OperatorFamily::DombiIntersection));
  CHECK_FALSE(kernels::avx2::has_batch_kernel(OperatorFamily::DombiUnion));
  std::mt19937_64 eng(19);
  const auto cols = random_columns(eng, 4, 10);
  std::vector<double> out(10);
  kernels::aggregate_batch(OperatorSpec(OperatorFamily::DombiIntersection, 2.0),
                           cols, out);
  for (const double v : out) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("batch kernel rejects mismatched shapes") {
  std::vector<std::vector<double>> cols(2, std::vector<double>(5, 0.5));
  std::vector<double> out(4);  // wrong length
  CHECK_THROWS_AS(
      kernels::aggregate_batch(OperatorSpec(OperatorFamily::Min), cols, out),
      UsageError);
  std::vector<double> ok(5);
  CHECK_THROWS_AS(
      kernels::aggregate_batch(OperatorSpec(OperatorFamily::Min), {}, ok),
      UsageError);
}
TEST_CASE("full fits are bit-identical across kernel ISAs") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available on this host; skipping");
    return;
  }
  const std::filesystem::path data_dir = AGGFIT_DATA_DIR;
  for (const char* stem : {"breast-cancer-wisconsin", "hepatitis"}) {
    CAPTURE(stem);
    const RawDataset raw =
        load_dataset(data_dir / (std::string(stem) + ".data"),
                     data_dir / (std::string(stem) + ".schema"));
    const FuzzifiedDataset data = fuzzify_dataset(preprocess(raw));

    kernels::force_isa(kernels::Isa::Avx2);
    const auto fast = fit_all(default_fit_roster(), data, FitConfig{});
    kernels::force_isa(kernels::Isa::Scalar);
    const auto slow = fit_all(default_fit_roster(), data, FitConfig{});
    kernels::reset_isa();

    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      REQUIRE(fast[i].spec.param == slow[i].spec.param);
      REQUIRE(fast[i].thresholds == slow[i].thresholds);
      REQUIRE(fast[i].correct_count == slow[i].correct_count);
      REQUIRE(fast[i].unambiguous_count == slow[i].unambiguous_count);
      REQUIRE(fast[i].satisfactory == slow[i].satisfactory);
    }
  }
}

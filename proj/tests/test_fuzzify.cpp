#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "aggfit/fuzzify.hpp"

using namespace aggfit;

namespace {

AttributeSpec attr(std::string name, AttributeKind kind) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = kind;
  return a;
}

RawDataset small_dataset() {
  RawDataset raw;
  raw.schema = {attr("a", AttributeKind::Ordinal),
                attr("b", AttributeKind::Nominal),
                attr("class", AttributeKind::Class)};
  raw.rows = {
      {std::optional<std::string>{"2"}, {"1"}, {"x"}},
      {std::optional<std::string>{"7"}, {"2"}, {"y"}},
      {std::optional<std::string>{"4"}, {"1"}, {"x"}},
  };
  return raw;
}

std::vector<std::optional<std::string>> cells(
    std::initializer_list<const char*> values) {
  std::vector<std::optional<std::string>> out;
  for (const char* v : values) {
    if (v == nullptr) {
      out.push_back(std::nullopt);
    } else {
      out.emplace_back(v);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("reorder_class_last permutes rows with the schema") {
  RawDataset raw;
  raw.schema = {attr("a", AttributeKind::Ordinal),
                attr("class", AttributeKind::Class),
                attr("b", AttributeKind::Ordinal)};
  raw.rows = {cells({"1", "2", "3"})};

  const RawDataset out = reorder_class_last(raw);
  CHECK(out.schema[0].name == "a");
  CHECK(out.schema[1].name == "b");
  CHECK(out.schema[2].kind == AttributeKind::Class);
  CHECK(*out.rows[0][0] == "1");
  CHECK(*out.rows[0][1] == "3");
  CHECK(*out.rows[0][2] == "2");

  // already last: identity; and idempotent
  const RawDataset again = reorder_class_last(out);
  CHECK(again.schema[2].kind == AttributeKind::Class);
  CHECK(again.rows == out.rows);

  RawDataset no_class;
  no_class.schema = {attr("a", AttributeKind::Ordinal)};
  CHECK_THROWS_AS(reorder_class_last(no_class), SchemaError);

  RawDataset two_classes;
  two_classes.schema = {attr("a", AttributeKind::Class),
                        attr("b", AttributeKind::Class)};
  CHECK_THROWS_AS(reorder_class_last(two_classes), SchemaError);
}

TEST_CASE("encode_nominal maps the two observed values onto 0 and 1") {
  RawDataset raw;
  raw.schema = {attr("n", AttributeKind::Nominal),
                attr("class", AttributeKind::Class)};
  raw.rows = {cells({"1", "x"}), cells({"2", "y"})};
  RawDataset out = encode_nominal(raw);
  CHECK(*out.rows[0][0] == "0");
  CHECK(*out.rows[1][0] == "1");
  CHECK(out.schema[0].nominal_levels->first == "1");
  CHECK(out.schema[0].nominal_levels->second == "2");

  // highest -> 1 regardless of order of appearance
  raw.rows = {cells({"3", "x"}), cells({"7", "x"}), cells({"7", "y"}),
              cells({"3", "y"})};
  out = encode_nominal(raw);
  CHECK(*out.rows[0][0] == "0");
  CHECK(*out.rows[1][0] == "1");
  CHECK(*out.rows[2][0] == "1");
  CHECK(*out.rows[3][0] == "0");

  // already binary: unchanged, and idempotent
  const RawDataset twice = encode_nominal(out);
  CHECK(twice.rows == out.rows);

  raw.rows = {cells({"1", "x"}), cells({"2", "x"}), cells({"5", "y"})};
  CHECK_THROWS_AS(encode_nominal(raw), SchemaError);
}

TEST_CASE("impute_missing fills column means, rounded for nominals") {
  RawDataset raw;
  raw.schema = {attr("o", AttributeKind::Ordinal),
                attr("n", AttributeKind::Nominal),
                attr("class", AttributeKind::Class)};
  raw.rows = {cells({"2", "0", "x"}), cells({nullptr, "1", "x"}),
              cells({"4", "1", "y"}), cells({"3", nullptr, "y"})};

  const RawDataset out = impute_missing(raw);
  CHECK(*out.rows[1][0] == "3");  // mean of {2, 4, 3}
  CHECK(*out.rows[3][1] == "1");  // mean 2/3 rounds up

  // idempotent and identity on complete data
  CHECK(impute_missing(out).rows == out.rows);

  // round-half-up at exactly 0.5
  raw.rows = {cells({"1", "0", "x"}), cells({"1", "1", "x"}),
              cells({"1", nullptr, "y"})};
  CHECK(*impute_missing(raw).rows[2][1] == "1");

  RawDataset empty_col;
  empty_col.schema = raw.schema;
  empty_col.rows = {cells({nullptr, "0", "x"}), cells({nullptr, "1", "y"})};
  CHECK_THROWS_AS(impute_missing(empty_col), DataError);
}

TEST_CASE("compute_center_width is the observed min/max") {
  const std::vector<double> col = {2, 7, 4};
  const auto [x1, x2] = compute_center_width(col);
  CHECK(x1 == 2);
  CHECK(x2 == 7);

  const std::vector<double> binary = {0, 1};
  CHECK(compute_center_width(binary) == std::pair<double, double>{0, 1});

  const std::vector<double> constant = {5, 5, 5};
  CHECK_THROWS_AS(compute_center_width(constant), DataError);
  CHECK_THROWS_AS(compute_center_width({}), UsageError);
}

TEST_CASE("gaussian membership values") {
  // midpoint peaks at 1 and is clamped just below it
  CHECK(membership_gaussian(5.0, 0.0, 10.0) == 1.0 - 1e-6);
  // x = x1 sits four widths out: e^-8
  CHECK(membership_gaussian(0.0, 0.0, 10.0) ==
        doctest::Approx(3.35462627902512e-4).epsilon(1e-9));
  // y = +-1 gives e^-0.5, the value recurring in the four-class example
  CHECK(membership_gaussian(3.75, 0.0, 10.0) ==
        doctest::Approx(0.606530659712633).epsilon(1e-12));
  CHECK(membership_gaussian(6.25, 0.0, 10.0) ==
        doctest::Approx(0.606530659712633).epsilon(1e-12));

  // strictly increasing up to the midpoint, strictly decreasing after
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 * i / 200.0;
    const double v = membership_gaussian(x, 0.0, 10.0);
    if (i > 0) CHECK(v > prev);
    prev = v;
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 + 5.0 * i / 200.0;
    const double v = membership_gaussian(x, 0.0, 10.0);
    if (i > 0) CHECK(v < prev);
    prev = v;
  }

  CHECK_THROWS_AS(membership_gaussian(1.0, 3.0, 3.0), DataError);
}

TEST_CASE("sigmoid membership: corrected and literal forms") {
  // corrected form: midpoint at one half, x1 near zero
  CHECK(membership_sigmoid(5.0, 0.0, 10.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(membership_sigmoid(0.0, 0.0, 10.0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(6.0))).epsilon(1e-12));
  CHECK(membership_sigmoid(0.0, 0.0, 10.0) ==
        doctest::Approx(0.00247).epsilon(1e-3));

  // literal printed form maps x1 to ~0.9975 instead
  CHECK(membership_sigmoid(0.0, 0.0, 10.0, SigmoidForm::Literal) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-6.0))).epsilon(1e-12));

  // corrected form strictly increasing across [x1, x2]
  double prev = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = membership_sigmoid(10.0 * i / 400.0, 0.0, 10.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("class encoding is k/(K+1) over the ordered labels") {
  const std::vector<std::string> four = {"1", "2", "3", "4"};
  CHECK(encode_class("1", four) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(encode_class("2", four) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(encode_class("3", four) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(encode_class("4", four) == doctest::Approx(0.8).epsilon(1e-15));

  const std::vector<std::string> two = {"no", "yes"};
  CHECK(encode_class("no", two) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(encode_class("yes", two) == doctest::Approx(2.0 / 3).epsilon(1e-15));

  const std::vector<std::string> one = {"only"};
  CHECK(encode_class("only", one) == 0.5);

  CHECK_THROWS_AS(encode_class("unknown", four), DataError);

  // injective with image strictly inside (0,1)
  for (std::size_t k = 0; k < four.size(); ++k) {
    const double v = encode_class(four[k], four);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(v != encode_class(four[j], four));
    }
  }
}

TEST_CASE("fuzzify_dataset output lies strictly inside (0,1)") {
  const RawDataset prepared = preprocess(small_dataset());
  const FuzzifiedDataset data = fuzzify_dataset(prepared);

  CHECK(data.inputs() == 2);
  CHECK(data.rows() == 3);
  CHECK(data.class_labels == std::vector<std::string>{"x", "y"});
  for (const auto& col : data.columns) {
    for (const double v : col) {
      CHECK(v >= kMembershipEpsilon);
      CHECK(v <= 1.0 - kMembershipEpsilon);
    }
  }
  // binary nominal through the corrected sigmoid: two distinct values
  CHECK(data.columns[1][0] != data.columns[1][1]);
  CHECK(data.targets[0] == doctest::Approx(1.0 / 3));
  CHECK(data.targets[1] == doctest::Approx(2.0 / 3));

  // deterministic: a second run is bit-identical
  const FuzzifiedDataset rerun = fuzzify_dataset(prepared);
  CHECK(rerun.columns == data.columns);
  CHECK(rerun.targets == data.targets);
}

TEST_CASE("four-class worked row lands on the expected membership levels") {
  // explicit ranges placing the raw values at y = -1 and y = -2
  RawDataset raw;
  raw.schema = {attr("lymphatics", AttributeKind::Ordinal),
                attr("block_of_affere", AttributeKind::Ordinal),
                attr("bl_of_lymph_c", AttributeKind::Ordinal),
                attr("class", AttributeKind::Class)};
  raw.schema[0].explicit_range = {{0.5, 4.5}};  // value 2 -> y = -1
  raw.schema[1].explicit_range = {{0.5, 4.5}};  // value 2 -> y = -1
  raw.schema[2].explicit_range = {{0.0, 4.0}};  // value 1 -> y = -2
  raw.class_label_order = {"1", "2", "3", "4"};
  raw.rows = {cells({"2", "2", "1", "2"})};

  const FuzzifiedDataset data = fuzzify_dataset(raw);
  CHECK(data.columns[0][0] == doctest::Approx(0.606531).epsilon(1e-6));
  CHECK(data.columns[1][0] == doctest::Approx(0.606531).epsilon(1e-6));
  CHECK(data.columns[2][0] == doctest::Approx(0.135335).epsilon(1e-6));
  CHECK(data.targets[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("fuzzify_dataset rejects unprepared input") {
  // class not last
  RawDataset raw;
  raw.schema = {attr("class", AttributeKind::Class),
                attr("a", AttributeKind::Ordinal)};
  raw.rows = {cells({"x", "1"})};
  CHECK_THROWS_AS(fuzzify_dataset(raw), UsageError);

  // missing cells remain
  RawDataset holes = small_dataset();
  holes.rows[0][0] = std::nullopt;
  CHECK_THROWS_AS(fuzzify_dataset(holes), UsageError);

  // constant input column
  RawDataset flat;
  flat.schema = {attr("a", AttributeKind::Ordinal),
                 attr("class", AttributeKind::Class)};
  flat.rows = {cells({"5", "x"}), cells({"5", "y"})};
  CHECK_THROWS_AS(fuzzify_dataset(flat), DataError);
}

TEST_CASE("fuzzify_instance: imputation, nominal mapping and clamping") {
  const RawDataset prepared = preprocess(small_dataset());
  const FuzzifiedDataset data = fuzzify_dataset(prepared);

  // missing ordinal cell gets the training mean; nominal token goes
  // through the recorded mapping
  const auto with_missing =
      fuzzify_instance(data.params, data.sigmoid_form, cells({nullptr, "2"}));
  const double mean_membership = membership_gaussian(
      data.params[0].mean, data.params[0].x1, data.params[0].x2);
  CHECK(with_missing[0] == mean_membership);
  CHECK(with_missing[1] == membership_sigmoid(1.0, 0.0, 1.0, data.sigmoid_form));

  // value beyond x2 clamps to x2
  const auto clamped =
      fuzzify_instance(data.params, data.sigmoid_form, cells({"99", "1"}));
  CHECK(clamped[0] == membership_gaussian(data.params[0].x2, data.params[0].x1,
                                          data.params[0].x2));

  CHECK_THROWS_AS(fuzzify_instance(data.params, data.sigmoid_form, cells({"1"})),
                  UsageError);
  CHECK_THROWS_AS(
      fuzzify_instance(data.params, data.sigmoid_form, cells({"1", "bogus"})),
      DataError);
}

#include "aggfit/fuzzify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aggfit/detail/text.hpp"

namespace aggfit {

using detail::format_double;
using detail::label_less;
using detail::parse_double;

std::size_t RawDataset::class_column() const {
  std::size_t found = schema.size();
  std::size_t count = 0;
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (schema[c].kind == AttributeKind::Class) {
      found = c;
      ++count;
    }
  }
  if (count != 1) {
    throw SchemaError("schema must declare exactly one class attribute, got " +
                      std::to_string(count));
  }
  return found;
}

RawDataset reorder_class_last(const RawDataset& raw) {
  const std::size_t cls = raw.class_column();
  if (cls + 1 == raw.schema.size()) return raw;

  RawDataset out = raw;
  std::rotate(out.schema.begin() + cls, out.schema.begin() + cls + 1,
              out.schema.end());
  for (auto& row : out.rows) {
    if (row.size() != raw.schema.size()) {
      throw DataError("row width does not match schema");
    }
    std::rotate(row.begin() + cls, row.begin() + cls + 1, row.end());
  }
  return out;
}

namespace {

void check_widths(const RawDataset& raw) {
  for (const auto& row : raw.rows) {
    if (row.size() != raw.schema.size()) {
      throw DataError("row width does not match schema");
    }
  }
}

}  // namespace

RawDataset encode_nominal(const RawDataset& raw) {
  check_widths(raw);
  RawDataset out = raw;
  for (std::size_t c = 0; c < out.schema.size(); ++c) {
    AttributeSpec& attr = out.schema[c];
    if (attr.kind != AttributeKind::Nominal) continue;

    std::set<std::string> distinct;
    for (const auto& row : out.rows) {
      if (row[c]) distinct.insert(*row[c]);
    }
    if (distinct.size() > 2) {
      throw SchemaError("nominal attribute '" + attr.name + "' has " +
                        std::to_string(distinct.size()) +
                        " distinct values; only binary nominals are defined");
    }
    if (distinct.empty()) continue;  // all missing; impute will reject

    std::string lo = *distinct.begin();
    std::string hi = distinct.size() == 2 ? *std::next(distinct.begin()) : lo;
    if (distinct.size() == 2 && label_less(hi, lo)) std::swap(lo, hi);

    for (auto& row : out.rows) {
      if (!row[c]) continue;
      row[c] = (*row[c] == hi && distinct.size() == 2) ? "1" : "0";
    }
    if (!attr.nominal_levels) attr.nominal_levels = {lo, hi};
  }
  return out;
}

RawDataset impute_missing(const RawDataset& raw) {
  check_widths(raw);
  RawDataset out = raw;
  const std::size_t cls = out.class_column();
  for (std::size_t c = 0; c < out.schema.size(); ++c) {
    if (c == cls) continue;
    bool any_missing = false;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : out.rows) {
      if (!row[c]) {
        any_missing = true;
        continue;
      }
      const auto v = parse_double(*row[c]);
      if (!v) {
        throw DataError("attribute '" + out.schema[c].name +
                        "' holds non-numeric value '" + *row[c] + "'");
      }
      sum += *v;
      ++n;
    }
    if (!any_missing) continue;
    if (n == 0) {
      throw DataError("attribute '" + out.schema[c].name +
                      "' has no observed values to impute from");
    }
    double mean = sum / static_cast<double>(n);
    if (out.schema[c].kind == AttributeKind::Nominal) {
      mean = std::floor(mean + 0.5);  // round half up, per the binary rule
    }
    const std::string filled = format_double(mean);
    for (auto& row : out.rows) {
      if (!row[c]) row[c] = filled;
    }
  }
  return out;
}

RawDataset preprocess(const RawDataset& raw) {
  return impute_missing(encode_nominal(reorder_class_last(raw)));
}

std::pair<double, double> compute_center_width(std::span<const double> column) {
  if (column.empty()) throw UsageError("compute_center_width: empty column");
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  if (*lo == *hi) {
    throw DataError("degenerate attribute: all values equal (" +
                    format_double(*lo) + "), membership undefined");
  }
  return {*lo, *hi};
}

namespace {

double clamp_membership(double v) {
  return std::clamp(v, kMembershipEpsilon, 1.0 - kMembershipEpsilon);
}

void require_span(double x1, double x2) {
  if (!(x1 < x2)) {
    throw DataError("membership requires x1 < x2, got [" + format_double(x1) +
                    ", " + format_double(x2) + "]");
  }
}

}  // namespace

double membership_gaussian(double x, double x1, double x2) {
  require_span(x1, x2);
  const double y = 8.0 * (x - x1) / (x2 - x1) - 4.0;
  return clamp_membership(std::exp(-0.5 * y * y));
}

double membership_sigmoid(double x, double x1, double x2, SigmoidForm form) {
  require_span(x1, x2);
  const double y = 12.0 * (x - x1) / (x2 - x1);
  const double shift = form == SigmoidForm::Corrected ? y - 6.0 : y + 6.0;
  return clamp_membership(1.0 / (1.0 + std::exp(-shift)));
}

double encode_class(const std::string& label,
                    std::span<const std::string> class_labels) {
  for (std::size_t k = 0; k < class_labels.size(); ++k) {
    if (class_labels[k] == label) {
      return static_cast<double>(k + 1) /
             static_cast<double>(class_labels.size() + 1);
    }
  }
  throw DataError("unknown class label '" + label + "'");
}

FuzzifiedDataset fuzzify_dataset(const RawDataset& raw, SigmoidForm form) {
  const std::size_t cls = raw.class_column();
  if (cls + 1 != raw.schema.size()) {
    throw UsageError("fuzzify_dataset: class attribute must be last (step 1)");
  }
  const std::size_t inputs = raw.schema.size() - 1;
  if (inputs == 0) throw SchemaError("dataset has no input attributes");

  for (const auto& row : raw.rows) {
    if (row.size() != raw.schema.size()) {
      throw DataError("row width does not match schema");
    }
    for (const auto& cell : row) {
      if (!cell) {
        throw UsageError("fuzzify_dataset: missing cells remain (step 3)");
      }
    }
  }

  FuzzifiedDataset out;
  out.sigmoid_form = form;

  // Class labels: declared order when given, otherwise sorted ascending.
  if (!raw.class_label_order.empty()) {
    out.class_labels = raw.class_label_order;
  } else {
    std::set<std::string> distinct;
    for (const auto& row : raw.rows) distinct.insert(*row[cls]);
    out.class_labels.assign(distinct.begin(), distinct.end());
    std::sort(out.class_labels.begin(), out.class_labels.end(), label_less);
  }

  const std::size_t n = raw.rows.size();
  out.columns.assign(inputs, std::vector<double>(n));
  out.targets.resize(n);
  out.class_index.resize(n);
  out.params.resize(inputs);

  for (std::size_t c = 0; c < inputs; ++c) {
    const AttributeSpec& attr = raw.schema[c];
    std::vector<double> values(n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto v = parse_double(*raw.rows[r][c]);
      if (!v) {
        throw DataError("attribute '" + attr.name +
                        "' holds non-numeric value '" + *raw.rows[r][c] + "'");
      }
      values[r] = *v;
    }

    const auto [x1, x2] = attr.explicit_range
                              ? *attr.explicit_range
                              : compute_center_width(values);
    require_span(x1, x2);

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    if (attr.kind == AttributeKind::Nominal) mean = std::floor(mean + 0.5);

    FuzzParams& p = out.params[c];
    p.name = attr.name;
    p.kind = attr.kind;
    p.membership = attr.effective_membership();
    p.x1 = x1;
    p.x2 = x2;
    p.mean = mean;
    if (attr.nominal_levels) {
      p.nominal_lo = attr.nominal_levels->first;
      p.nominal_hi = attr.nominal_levels->second;
    }

    for (std::size_t r = 0; r < n; ++r) {
      out.columns[c][r] = p.membership == MembershipKind::Gaussian
                              ? membership_gaussian(values[r], x1, x2)
                              : membership_sigmoid(values[r], x1, x2, form);
    }
  }

  for (std::size_t r = 0; r < n; ++r) {
    const std::string& label = *raw.rows[r][cls];
    out.targets[r] = encode_class(label, out.class_labels);
    const auto it =
        std::find(out.class_labels.begin(), out.class_labels.end(), label);
    out.class_index[r] =
        static_cast<std::size_t>(it - out.class_labels.begin());
  }
  return out;
}

std::vector<double> fuzzify_instance(
    std::span<const FuzzParams> params, SigmoidForm form,
    std::span<const std::optional<std::string>> cells) {
  if (cells.size() != params.size()) {
    throw UsageError("instance width " + std::to_string(cells.size()) +
                     " does not match model width " +
                     std::to_string(params.size()));
  }
  std::vector<double> memberships(params.size());
  for (std::size_t c = 0; c < params.size(); ++c) {
    const FuzzParams& p = params[c];
    double x;
    if (!cells[c]) {
      x = p.mean;
    } else if (p.kind == AttributeKind::Nominal && !p.nominal_lo.empty()) {
      const std::string_view token = *cells[c];
      if (token == p.nominal_lo) {
        x = 0.0;
      } else if (token == p.nominal_hi) {
        x = 1.0;
      } else {
        throw DataError("attribute '" + p.name + "': unknown nominal value '" +
                        *cells[c] + "'");
      }
    } else {
      const auto v = parse_double(*cells[c]);
      if (!v) {
        throw DataError("attribute '" + p.name + "': non-numeric value '" +
                        *cells[c] + "'");
      }
      x = *v;
    }
    x = std::clamp(x, p.x1, p.x2);  // new data may exceed the training range
    memberships[c] = p.membership == MembershipKind::Gaussian
                         ? membership_gaussian(x, p.x1, p.x2)
                         : membership_sigmoid(x, p.x1, p.x2, form);
  }
  return memberships;
}

}  // namespace aggfit

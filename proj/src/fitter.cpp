#include "aggfit/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aggfit/kernels.hpp"

namespace aggfit {

namespace {

std::vector<double> make_unit_grid() {
  std::vector<double> g(11);
  for (int i = 0; i <= 10; ++i) g[i] = static_cast<double>(i) / 10.0;
  return g;
}

std::vector<double> make_hamacher_grid() {
  std::vector<double> g(11);
  for (int i = 0; i <= 10; ++i) g[i] = static_cast<double>(i);
  return g;
}

}  // namespace

std::span<const double> default_param_grid(OperatorFamily family) {
  static const std::vector<double> hamacher = make_hamacher_grid();
  static const std::vector<double> dombi = {0.5, 1, 2, 5, 10, 25, 50};
  static const std::vector<double> unit = make_unit_grid();
  static const std::vector<double> none;
  switch (family) {
    case OperatorFamily::HamacherProduct:
    case OperatorFamily::HamacherSum:
      return hamacher;
    case OperatorFamily::DombiIntersection:
    case OperatorFamily::DombiUnion:
      return dombi;
    case OperatorFamily::DuboisUnion:
    case OperatorFamily::FuzzyAnd:
    case OperatorFamily::FuzzyOr:
    case OperatorFamily::ConvexMin:
    case OperatorFamily::ConvexMax:
      return unit;
    default:
      return none;
  }
}

std::span<const double> FitConfig::grid_for(OperatorFamily family) const {
  const auto it = param_grid.find(family);
  if (it != param_grid.end()) return it->second;
  return default_param_grid(family);
}

std::vector<double> aggregate_column(const OperatorSpec& spec,
                                     const FuzzifiedDataset& data) {
  if (data.rows() == 0) throw UsageError("aggregate_column: empty dataset");
  std::vector<double> out(data.rows());
  kernels::aggregate_batch(spec, data.columns, out);
  return out;
}

SweepResult sweep_threshold(std::span<const double> values,
                            std::span<const std::uint8_t> is_lower_class,
                            double m_point, double compare, double step_size) {
  if (values.empty()) throw UsageError("sweep_threshold: empty input");
  if (values.size() != is_lower_class.size()) {
    throw UsageError("sweep_threshold: values/flags size mismatch");
  }
  if (m_point > compare) {
    throw UsageError("sweep_threshold: m_point above compare");
  }
  if (step_size <= 0.0 && m_point < compare) {
    throw UsageError("sweep_threshold: step_size must be positive");
  }
  const kernels::SweepHit hit = kernels::sweep_min_nok(
      values, is_lower_class, m_point, compare, step_size);
  SweepResult res;
  res.threshold = hit.threshold;
  res.counts.ok = hit.ok;
  res.counts.nok = hit.nok;
  return res;
}

namespace {

/// Index of the class interval (threshold_{k-1}, threshold_k] holding v.
std::size_t interval_index(double v, std::span<const double> thresholds) {
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), v);
  return static_cast<std::size_t>(it - thresholds.begin());
}

struct PairSweep {
  double threshold = 0.0;
  std::size_t ok = 0;
  std::size_t total = 0;
};

/// Sweep the boundary between classes k and k+1 over their instances only.
PairSweep sweep_pair(std::span<const double> values,
                     std::span<const std::size_t> class_index, std::size_t k,
                     const FitConfig& config) {
  std::vector<double> pair_values;
  std::vector<std::uint8_t> lower;
  double min_upper = std::numeric_limits<double>::infinity();
  double max_lower = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (class_index[r] != k && class_index[r] != k + 1) continue;
    const bool is_lower = class_index[r] == k;
    pair_values.push_back(values[r]);
    lower.push_back(is_lower ? 1 : 0);
    lo = std::min(lo, values[r]);
    hi = std::max(hi, values[r]);
    if (is_lower) {
      max_lower = std::max(max_lower, values[r]);
    } else {
      min_upper = std::min(min_upper, values[r]);
    }
  }
  if (pair_values.empty() || !std::isfinite(max_lower) ||
      !std::isfinite(min_upper)) {
    throw DataError("adjacent class pair " + std::to_string(k + 1) + "/" +
                    std::to_string(k + 2) + " has an empty class");
  }

  double m_point = min_upper;
  double compare = max_lower;
  if (config.bounds == SweepBoundsPolicy::FullRange || m_point > compare) {
    m_point = lo;  // disjoint classes: fall back to the full value range
    compare = hi;
  }
  const double step =
      (compare - m_point) / static_cast<double>(config.step_count);

  const SweepResult res =
      sweep_threshold(pair_values, lower, m_point, compare, step);
  return {res.threshold, res.counts.ok, pair_values.size()};
}

std::size_t count_correct(std::span<const double> values,
                          std::span<const std::size_t> class_index,
                          std::span<const double> thresholds) {
  std::size_t correct = 0;
  for (std::size_t r = 0; r < values.size(); ++r) {
    correct += interval_index(values[r], thresholds) == class_index[r];
  }
  return correct;
}

/// Instances whose aggregated value avoids every between-class overlap
/// region get classified the same way wherever the thresholds land.
std::size_t count_unambiguous(std::span<const double> values,
                              std::span<const std::size_t> class_index,
                              std::size_t class_count) {
  std::vector<std::pair<double, double>> overlaps;
  for (std::size_t k = 0; k + 1 < class_count; ++k) {
    double min_upper = std::numeric_limits<double>::infinity();
    double max_lower = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (class_index[r] == k) {
        max_lower = std::max(max_lower, values[r]);
      } else if (class_index[r] == k + 1) {
        min_upper = std::min(min_upper, values[r]);
      }
    }
    if (min_upper <= max_lower) overlaps.emplace_back(min_upper, max_lower);
  }
  std::size_t count = 0;
  for (const double v : values) {
    bool inside = false;
    for (const auto& [lo, hi] : overlaps) {
      if (v >= lo && v <= hi) {
        inside = true;
        break;
      }
    }
    count += !inside;
  }
  return count;
}

struct Candidate {
  OperatorSpec spec{OperatorFamily::Min};
  std::vector<double> thresholds;
  std::size_t correct = 0;
  bool satisfactory = true;
  std::vector<double> values;
};

Candidate evaluate_param(const OperatorSpec& spec, const FuzzifiedDataset& data,
                         const FitConfig& config) {
  Candidate cand;
  cand.spec = spec;
  cand.values = aggregate_column(spec, data);

  const std::size_t klasses = data.class_labels.size();
  std::size_t pair_ok = 0;
  std::size_t pair_total = 0;
  for (std::size_t k = 0; k + 1 < klasses; ++k) {
    const PairSweep ps = sweep_pair(cand.values, data.class_index, k, config);
    cand.thresholds.push_back(ps.threshold);
    pair_ok += ps.ok;
    pair_total += ps.total;
  }

  const bool was_sorted = std::is_sorted(cand.thresholds.begin(),
                                         cand.thresholds.end());
  std::sort(cand.thresholds.begin(), cand.thresholds.end());
  cand.correct = count_correct(cand.values, data.class_index, cand.thresholds);

  if (!was_sorted && pair_total > 0) {
    const double pairwise_acc =
        static_cast<double>(pair_ok) / static_cast<double>(pair_total);
    const double global_acc = static_cast<double>(cand.correct) /
                              static_cast<double>(data.rows());
    cand.satisfactory = std::abs(pairwise_acc - global_acc) <= 0.05;
  }
  return cand;
}

}  // namespace

FittedModel fit_operator(OperatorFamily family, const FuzzifiedDataset& data,
                         const FitConfig& config) {
  if (data.rows() == 0) throw UsageError("fit_operator: empty dataset");
  if (config.step_count < 2) {
    throw UsageError("fit_operator: step_count must be at least 2");
  }

  std::vector<OperatorSpec> specs;
  if (is_parametrized(family)) {
    const auto grid = config.grid_for(family);
    if (grid.empty()) {
      throw ParameterError("fit_operator: empty parameter grid for " +
                           std::string(family_id(family)));
    }
    for (const double p : grid) specs.emplace_back(family, p);
  } else {
    specs.emplace_back(family);
  }

  Candidate best;
  bool have_best = false;
  for (const OperatorSpec& spec : specs) {
    Candidate cand = evaluate_param(spec, data, config);
    if (!have_best || cand.correct > best.correct) {
      best = std::move(cand);
      have_best = true;
    }
  }

  FittedModel model;
  model.spec = best.spec;
  model.thresholds = best.thresholds;
  model.fuzz_params = data.params;
  model.class_labels = data.class_labels;
  model.sigmoid_form = data.sigmoid_form;
  model.correct_count = best.correct;
  model.instance_count = data.rows();
  model.train_accuracy =
      static_cast<double>(best.correct) / static_cast<double>(data.rows());
  model.satisfactory = best.satisfactory;
  model.unambiguous_count = count_unambiguous(best.values, data.class_index,
                                              data.class_labels.size());
  return model;
}

std::string classify(const FittedModel& model,
                     std::span<const double> memberships) {
  if (memberships.size() != model.fuzz_params.size()) {
    throw UsageError("classify: instance width " +
                     std::to_string(memberships.size()) +
                     " does not match model width " +
                     std::to_string(model.fuzz_params.size()));
  }
  const double v = aggregate(model.spec, memberships).value;
  const std::size_t k = interval_index(v, model.thresholds);
  return model.class_labels[std::min(k, model.class_labels.size() - 1)];
}

const FittedModel& select_operator(std::span<const FittedModel> models) {
  if (models.empty()) throw UsageError("select_operator: no models");
  const FittedModel* best = &models[0];
  for (const FittedModel& m : models.subspan(1)) {
    if (m.correct_count > best->correct_count ||
        (m.correct_count == best->correct_count &&
         m.unambiguous_count > best->unambiguous_count)) {
      best = &m;
    }
  }
  return *best;
}

MatchCounts evaluate(const FittedModel& model, const FuzzifiedDataset& data) {
  if (data.inputs() != model.fuzz_params.size() ||
      data.class_labels != model.class_labels) {
    throw UsageError("evaluate: dataset does not match the model schema");
  }
  MatchCounts counts;
  std::vector<double> row(data.inputs());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.inputs(); ++c) row[c] = data.columns[c][r];
    const std::string label = classify(model, row);
    if (label == data.class_labels[data.class_index[r]]) {
      ++counts.ok;
    } else {
      ++counts.nok;
    }
  }
  return counts;
}

std::vector<FittedModel> fit_all(std::span<const OperatorFamily> roster,
                                 const FuzzifiedDataset& data,
                                 const FitConfig& config) {
  std::vector<FittedModel> models;
  models.reserve(roster.size());
  for (const OperatorFamily family : roster) {
    models.push_back(fit_operator(family, data, config));
  }
  return models;
}

FitReport make_report(std::span<const FittedModel> models,
                      const std::string& dataset_name) {
  FitReport report;
  report.dataset_name = dataset_name;
  for (const FittedModel& m : models) {
    report.instance_count = m.instance_count;
    FitReportRow row;
    row.op_class = operator_class(m.spec.family);
    row.family = m.spec.family;
    row.param = m.spec.param;
    row.thresholds = m.thresholds;
    row.correct_count = m.correct_count;
    row.accuracy_pct = 100.0 * m.train_accuracy;
    row.satisfactory = m.satisfactory;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace aggfit

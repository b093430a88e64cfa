#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aggfit/fuzzify.hpp"
#include "aggfit/operators.hpp"

namespace aggfit {

enum class SweepBoundsPolicy { OverlapRegion, FullRange };

struct FitConfig {
  /// Threshold grid resolution: the sweep visits step_count+1 points.
  int step_count = 1000;
  SweepBoundsPolicy bounds = SweepBoundsPolicy::OverlapRegion;
  /// Per-family parameter grids; families absent here use default_param_grid.
  std::map<OperatorFamily, std::vector<double>> param_grid;

  std::span<const double> grid_for(OperatorFamily family) const;
};

/// Built-in parameter grids: Hamacher gamma 0..10, Dombi lambda
/// {0.5,1,2,5,10,25,50}, Dubois alpha and Werners/convex gamma 0,0.1,..,1.
std::span<const double> default_param_grid(OperatorFamily family);

struct MatchCounts {
  std::size_t ok = 0;
  std::size_t nok = 0;
};

struct SweepResult {
  double threshold = 0.0;
  MatchCounts counts;
};

struct FittedModel {
  OperatorSpec spec{OperatorFamily::Min};
  std::vector<double> thresholds;  // K-1, ascending
  std::vector<FuzzParams> fuzz_params;
  std::vector<std::string> class_labels;
  SigmoidForm sigmoid_form = SigmoidForm::Corrected;
  double train_accuracy = 0.0;
  std::size_t correct_count = 0;
  std::size_t instance_count = 0;
  /// False when sorting non-monotone pairwise thresholds moved the global
  /// accuracy more than five points away from the pairwise sweep accuracy.
  bool satisfactory = true;
  /// Training instances whose aggregated value falls outside every
  /// between-class overlap region; the selection tie-breaker.
  std::size_t unambiguous_count = 0;
};

struct FitReportRow {
  OperatorClass op_class;
  OperatorFamily family;
  std::optional<double> param;
  std::vector<double> thresholds;
  std::size_t correct_count = 0;
  double accuracy_pct = 0.0;
  bool satisfactory = true;
};

struct FitReport {
  std::string dataset_name;
  std::size_t instance_count = 0;
  std::vector<FitReportRow> rows;
};

/// One aggregated value per instance, over the input columns.
std::vector<double> aggregate_column(const OperatorSpec& spec,
                                     const FuzzifiedDataset& data);

/// Scan t = m_point, m_point+step, ... while t <= compare; an instance is
/// correct iff (lower and value <= t) or (upper and value > t). Returns the
/// first grid point minimizing the mismatch count.
SweepResult sweep_threshold(std::span<const double> values,
                            std::span<const std::uint8_t> is_lower_class,
                            double m_point, double compare, double step_size);

FittedModel fit_operator(OperatorFamily family, const FuzzifiedDataset& data,
                         const FitConfig& config);

/// Class label whose interval (threshold_{k-1}, threshold_k] contains the
/// aggregated value of the given instance memberships.
std::string classify(const FittedModel& model,
                     std::span<const double> memberships);

/// Highest accuracy, then most unambiguous instances, then roster order.
const FittedModel& select_operator(std::span<const FittedModel> models);

MatchCounts evaluate(const FittedModel& model, const FuzzifiedDataset& data);

/// Fits every family in the roster, in roster order.
std::vector<FittedModel> fit_all(std::span<const OperatorFamily> roster,
                                 const FuzzifiedDataset& data,
                                 const FitConfig& config);

FitReport make_report(std::span<const FittedModel> models,
                      const std::string& dataset_name);

}  // namespace aggfit

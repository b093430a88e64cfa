#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aggfit/errors.hpp"

namespace aggfit {

enum class AttributeKind { Nominal, Ordinal, Class };
enum class MembershipKind { Gaussian, Sigmoid };

/// Which sign convention the sigmoid membership uses. Corrected maps
/// [x1,x2] onto (0.0025, 0.9975); Literal reproduces the printed formula,
/// which maps everything above 0.9975.
enum class SigmoidForm { Corrected, Literal };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::Ordinal;
  /// Defaults to sigmoid for nominal and gaussian for ordinal attributes.
  std::optional<MembershipKind> membership;
  /// Overrides the observed-range center/width policy.
  std::optional<std::pair<double, double>> explicit_range;
  /// Original tokens mapped to 0 and 1; recorded by encode_nominal.
  std::optional<std::pair<std::string, std::string>> nominal_levels;

  MembershipKind effective_membership() const {
    if (membership) return *membership;
    return kind == AttributeKind::Nominal ? MembershipKind::Sigmoid
                                          : MembershipKind::Gaussian;
  }
};

/// Raw tabular dataset. Cells hold the original tokens; a missing cell is
/// std::nullopt. Exactly one attribute has kind Class.
struct RawDataset {
  std::vector<AttributeSpec> schema;
  std::vector<std::vector<std::optional<std::string>>> rows;
  /// Declared class-label order; deduced (sorted ascending) when empty.
  std::vector<std::string> class_label_order;

  std::size_t class_column() const;  // throws SchemaError unless exactly one
};

/// Per-attribute fuzzification parameters captured by the pipeline and
/// persisted with a fitted model so new instances can be mapped identically.
struct FuzzParams {
  std::string name;
  AttributeKind kind = AttributeKind::Ordinal;
  MembershipKind membership = MembershipKind::Gaussian;
  double x1 = 0.0;
  double x2 = 1.0;
  /// Training-time imputation value (column mean; rounded for nominal).
  double mean = 0.0;
  /// Original tokens a nominal attribute maps to 0 and 1; empty otherwise.
  std::string nominal_lo, nominal_hi;
};

/// Fuzzified instance matrix, stored column-major (columns[c][r]).
struct FuzzifiedDataset {
  std::vector<std::vector<double>> columns;   // one per input attribute
  std::vector<double> targets;                // encoded class value per row
  std::vector<std::size_t> class_index;       // 0-based label index per row
  std::vector<std::string> class_labels;      // ordered K labels
  std::vector<FuzzParams> params;             // one per input attribute
  SigmoidForm sigmoid_form = SigmoidForm::Corrected;

  std::size_t rows() const { return targets.size(); }
  std::size_t inputs() const { return columns.size(); }
};

/// Membership values are clamped into [kMembershipEpsilon, 1-kMembershipEpsilon]
/// so downstream operators never see exact 0 or 1.
inline constexpr double kMembershipEpsilon = 1e-6;

// Preprocessing steps, each a pure dataset-to-dataset transformation.
RawDataset reorder_class_last(const RawDataset& raw);
RawDataset encode_nominal(const RawDataset& raw);
RawDataset impute_missing(const RawDataset& raw);
/// The three steps in order.
RawDataset preprocess(const RawDataset& raw);

/// Observed minimum and maximum of a column; throws DataError when constant.
std::pair<double, double> compute_center_width(std::span<const double> column);

double membership_gaussian(double x, double x1, double x2);
double membership_sigmoid(double x, double x1, double x2,
                          SigmoidForm form = SigmoidForm::Corrected);

/// k-th label of K (1-indexed in class_labels order) encodes to k/(K+1).
double encode_class(const std::string& label,
                    std::span<const std::string> class_labels);

/// Maps a preprocessed dataset (class last, nominals 0/1, no missing cells)
/// through the membership functions and the class encoding.
FuzzifiedDataset fuzzify_dataset(const RawDataset& raw,
                                 SigmoidForm form = SigmoidForm::Corrected);

/// Maps one raw instance (input cells only, class excluded) through stored
/// fuzzification parameters: missing cells take the training mean, nominal
/// tokens go through the recorded 0/1 mapping, ordinal values are clamped to
/// [x1, x2].
std::vector<double> fuzzify_instance(
    std::span<const FuzzParams> params, SigmoidForm form,
    std::span<const std::optional<std::string>> cells);

}  // namespace aggfit

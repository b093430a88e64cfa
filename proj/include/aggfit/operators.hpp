#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aggfit/errors.hpp"

namespace aggfit {

/// Aggregation operator families, in roster order: five t-norms, six
/// t-conorms (Dubois union is the extra, off the default fit roster),
/// four averaging operators.
enum class OperatorFamily {
  EinsteinProduct,
  AlgebraicProduct,
  HamacherProduct,
  Min,
  DombiIntersection,
  EinsteinSum,
  AlgebraicSum,
  HamacherSum,
  Max,
  DombiUnion,
  DuboisUnion,
  FuzzyAnd,
  FuzzyOr,
  ConvexMin,
  ConvexMax,
};

enum class OperatorClass { TNorm, TConorm, Averaging };

/// An operator family plus its parameter, when the family has one
/// (gamma for Hamacher/Werners/convex, lambda for Dombi, alpha for Dubois).
struct OperatorSpec {
  OperatorFamily family;
  std::optional<double> param;

  OperatorSpec(OperatorFamily f) : family(f) {}  // NOLINT(google-explicit-constructor)
  OperatorSpec(OperatorFamily f, double p) : family(f), param(p) {}
};

struct AggregationResult {
  double value;
  OperatorSpec spec;
};

OperatorClass operator_class(OperatorFamily family);
bool is_parametrized(OperatorFamily family);

/// Inclusive valid parameter range; meaningless for nonparametrized families.
/// Dombi's lambda is open at 0; the lower bound returned is 0 and exact 0 is
/// rejected by validate_spec.
std::pair<double, double> param_range(OperatorFamily family);

/// Throws ParameterError unless the spec carries a parameter exactly when the
/// family needs one and the value is in range.
void validate_spec(const OperatorSpec& spec);

/// Compact identifier used in CLI flags, schema and model files.
std::string_view family_id(OperatorFamily family);
/// Display name as used in report tables.
std::string_view family_display_name(OperatorFamily family);
std::optional<OperatorFamily> family_from_id(std::string_view id);

/// All fifteen families in roster order.
std::span<const OperatorFamily> full_roster();
/// The fourteen families fitted by default (Dubois union excluded).
std::span<const OperatorFamily> default_fit_roster();

/// Evaluate the operator on a nonempty membership vector. T-norms and
/// t-conorms extend their binary form by left-fold; averaging operators act
/// on the min/max/mean of the vector.
AggregationResult aggregate(const OperatorSpec& spec, std::span<const double> xs);

/// De Morgan dual 1 - t(1-x1, ..., 1-xn) of a t-norm spec.
double dual_tconorm(const OperatorSpec& tnorm_spec, std::span<const double> xs);

}  // namespace aggfit

#include "aggfit/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace aggfit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyInfo {
  OperatorFamily family;
  OperatorClass op_class;
  bool parametrized;
  double param_lo;
  double param_hi;
  const char* id;
  const char* display;
};

constexpr FamilyInfo kFamilies[] = {
    {OperatorFamily::EinsteinProduct, OperatorClass::TNorm, false, 0, 0,
     "EinsteinProduct", "Einstein Product"},
    {OperatorFamily::AlgebraicProduct, OperatorClass::TNorm, false, 0, 0,
     "AlgebraicProduct", "Algebraic Product"},
    {OperatorFamily::HamacherProduct, OperatorClass::TNorm, true, 0, kInf,
     "HamacherProduct", "Hamacher Product"},
    {OperatorFamily::Min, OperatorClass::TNorm, false, 0, 0, "Min",
     "MIN Operator"},
    {OperatorFamily::DombiIntersection, OperatorClass::TNorm, true, 0, kInf,
     "DombiIntersection", "Dombi Intersection"},
    {OperatorFamily::EinsteinSum, OperatorClass::TConorm, false, 0, 0,
     "EinsteinSum", "Einstein Sum"},
    {OperatorFamily::AlgebraicSum, OperatorClass::TConorm, false, 0, 0,
     "AlgebraicSum", "Algebraic Sum"},
    {OperatorFamily::HamacherSum, OperatorClass::TConorm, true, 0, kInf,
     "HamacherSum", "Hamacher Sum"},
    {OperatorFamily::Max, OperatorClass::TConorm, false, 0, 0, "Max",
     "MAX Operator"},
    {OperatorFamily::DombiUnion, OperatorClass::TConorm, true, 0, kInf,
     "DombiUnion", "Dombi Union"},
    {OperatorFamily::DuboisUnion, OperatorClass::TConorm, true, 0, 1,
     "DuboisUnion", "Dubois Union"},
    {OperatorFamily::FuzzyAnd, OperatorClass::Averaging, true, 0, 1, "FuzzyAnd",
     "Fuzzy AND"},
    {OperatorFamily::FuzzyOr, OperatorClass::Averaging, true, 0, 1, "FuzzyOr",
     "Fuzzy OR"},
    {OperatorFamily::ConvexMin, OperatorClass::Averaging, true, 0, 1,
     "ConvexMin", "Convex combination of min"},
    {OperatorFamily::ConvexMax, OperatorClass::Averaging, true, 0, 1,
     "ConvexMax", "Convex combination of max"},
};

const FamilyInfo& info(OperatorFamily f) { return kFamilies[static_cast<int>(f)]; }

constexpr std::array<OperatorFamily, 15> kFullRoster = {
    OperatorFamily::EinsteinProduct, OperatorFamily::AlgebraicProduct,
    OperatorFamily::HamacherProduct, OperatorFamily::Min,
    OperatorFamily::DombiIntersection, OperatorFamily::EinsteinSum,
    OperatorFamily::AlgebraicSum, OperatorFamily::HamacherSum,
    OperatorFamily::Max, OperatorFamily::DombiUnion, OperatorFamily::DuboisUnion,
    OperatorFamily::FuzzyAnd, OperatorFamily::FuzzyOr, OperatorFamily::ConvexMin,
    OperatorFamily::ConvexMax};

constexpr std::array<OperatorFamily, 14> kDefaultFitRoster = {
    OperatorFamily::EinsteinProduct, OperatorFamily::AlgebraicProduct,
    OperatorFamily::HamacherProduct, OperatorFamily::Min,
    OperatorFamily::DombiIntersection, OperatorFamily::EinsteinSum,
    OperatorFamily::AlgebraicSum, OperatorFamily::HamacherSum,
    OperatorFamily::Max, OperatorFamily::DombiUnion, OperatorFamily::FuzzyAnd,
    OperatorFamily::FuzzyOr, OperatorFamily::ConvexMin, OperatorFamily::ConvexMax};

void require_open_unit(std::span<const double> xs, const char* op) {
  for (double x : xs) {
    if (x <= 0.0 || x >= 1.0) {
      throw DomainError(std::string(op) +
                        ": inputs must lie strictly inside (0,1)");
    }
  }
}

/// 1/(1+e^{-z}) without overflow.
double stable_logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Dombi, n-ary: the fold of the binary form telescopes into a power sum of
// the ratios (1-x)/x (intersection) or x/(1-x) (union). Power sums switch to
// log-domain accumulation once lambda*|log ratio| could overflow a double.
double dombi(std::span<const double> xs, double lambda, bool is_union) {
  require_open_unit(xs, is_union ? "DombiUnion" : "DombiIntersection");
  constexpr double kLogDomainLimit = 500.0;

  double peak = -kInf;  // max lambda*log(ratio)
  double max_abs = 0.0;
  for (double x : xs) {
    const double log_r = is_union ? std::log(x) - std::log1p(-x)
                                  : std::log1p(-x) - std::log(x);
    peak = std::max(peak, lambda * log_r);
    max_abs = std::max(max_abs, std::abs(lambda * log_r));
  }

  if (max_abs <= kLogDomainLimit) {
    double sum = 0.0;
    for (double x : xs) {
      const double r = is_union ? x / (1.0 - x) : (1.0 - x) / x;
      sum += std::pow(r, lambda);
    }
    const double root = std::pow(sum, 1.0 / lambda);
    return is_union ? 1.0 - 1.0 / (1.0 + root) : 1.0 / (1.0 + root);
  }

  double scaled_sum = 0.0;
  for (double x : xs) {
    const double log_r = is_union ? std::log(x) - std::log1p(-x)
                                  : std::log1p(-x) - std::log(x);
    scaled_sum += std::exp(lambda * log_r - peak);
  }
  const double u = (peak + std::log(scaled_sum)) / lambda;
  return is_union ? stable_logistic(u) : stable_logistic(-u);
}

double eval(const OperatorSpec& spec, std::span<const double> xs) {
  const double g = spec.param.value_or(0.0);
  switch (spec.family) {
    case OperatorFamily::Min:
      return *std::min_element(xs.begin(), xs.end());
    case OperatorFamily::Max:
      return *std::max_element(xs.begin(), xs.end());
    case OperatorFamily::AlgebraicProduct: {
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) acc = acc * xs[i];
      return acc;
    }
    case OperatorFamily::AlgebraicSum: {
      double acc = 1.0 - xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) acc = acc * (1.0 - xs[i]);
      return 1.0 - acc;
    }
    case OperatorFamily::EinsteinProduct: {
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const double num = acc * xs[i];
        acc = std::min(num / (2.0 - (acc + xs[i] - num)), 1.0);
      }
      return acc;
    }
    case OperatorFamily::EinsteinSum: {
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i)
        acc = std::min((acc + xs[i]) / (1.0 + acc * xs[i]), 1.0);
      return acc;
    }
    case OperatorFamily::HamacherProduct: {
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const double num = acc * xs[i];
        const double den = g + (1.0 - g) * (acc + xs[i] - num);
        acc = den == 0.0 ? 0.0 : std::min(num / den, 1.0);  // gamma 0 at (0,0)
      }
      return acc;
    }
    case OperatorFamily::HamacherSum: {
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const double ab = acc * xs[i];
        const double den = 1.0 - (1.0 - g) * ab;
        acc = den == 0.0 ? 1.0
                         : std::min((acc + xs[i] - (2.0 - g) * ab) / den, 1.0);
      }
      return acc;
    }
    case OperatorFamily::DombiIntersection:
      return dombi(xs, g, false);
    case OperatorFamily::DombiUnion:
      return dombi(xs, g, true);
    case OperatorFamily::DuboisUnion: {
      require_open_unit(xs, "DuboisUnion");
      double acc = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const double ca = 1.0 - acc, cb = 1.0 - xs[i];
        const double m = std::max(std::max(ca, cb), g);
        acc = m == 0.0 ? 1.0 : std::max(1.0 - (ca * cb) / m, 0.0);
      }
      return acc;
    }
    case OperatorFamily::FuzzyAnd:
    case OperatorFamily::FuzzyOr:
    case OperatorFamily::ConvexMin:
    case OperatorFamily::ConvexMax: {
      double vmin = xs[0], vmax = xs[0], vsum = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) {
        vmin = std::min(vmin, xs[i]);
        vmax = std::max(vmax, xs[i]);
        vsum = vsum + xs[i];
      }
      const double mean = vsum / static_cast<double>(xs.size());
      switch (spec.family) {
        case OperatorFamily::FuzzyAnd:
          return std::min(g * vmin + (1.0 - g) * mean, 1.0);
        case OperatorFamily::FuzzyOr:
          return std::min(g * vmax + (1.0 - g) * mean, 1.0);
        case OperatorFamily::ConvexMin:
          return std::min(g * vmin + (1.0 - g) * vmax, 1.0);
        default:
          return std::min(g * vmax + (1.0 - g) * vmin, 1.0);
      }
    }
  }
  throw UsageError("aggregate: unknown operator family");
}

}  // namespace

OperatorClass operator_class(OperatorFamily family) {
  return info(family).op_class;
}

bool is_parametrized(OperatorFamily family) { return info(family).parametrized; }

std::pair<double, double> param_range(OperatorFamily family) {
  return {info(family).param_lo, info(family).param_hi};
}

void validate_spec(const OperatorSpec& spec) {
  const FamilyInfo& fi = info(spec.family);
  if (!fi.parametrized) {
    if (spec.param) {
      throw ParameterError(std::string(fi.id) + " takes no parameter");
    }
    return;
  }
  if (!spec.param) {
    throw ParameterError(std::string(fi.id) + " requires a parameter");
  }
  const double p = *spec.param;
  const bool dombi = spec.family == OperatorFamily::DombiIntersection ||
                     spec.family == OperatorFamily::DombiUnion;
  if (std::isnan(p) || p < fi.param_lo || p > fi.param_hi ||
      (dombi && p <= 0.0)) {
    throw ParameterError(std::string(fi.id) + ": parameter " +
                         std::to_string(p) + " out of range");
  }
}

std::string_view family_id(OperatorFamily family) { return info(family).id; }

std::string_view family_display_name(OperatorFamily family) {
  return info(family).display;
}

std::optional<OperatorFamily> family_from_id(std::string_view id) {
  for (const FamilyInfo& fi : kFamilies) {
    if (id == fi.id) return fi.family;
  }
  return std::nullopt;
}

std::span<const OperatorFamily> full_roster() { return kFullRoster; }

std::span<const OperatorFamily> default_fit_roster() {
  return kDefaultFitRoster;
}

AggregationResult aggregate(const OperatorSpec& spec,
                            std::span<const double> xs) {
  if (xs.empty()) throw UsageError("aggregate: empty input");
  validate_spec(spec);
  for (double x : xs) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("aggregate: membership value outside [0,1]");
    }
  }
  return {eval(spec, xs), spec};
}

double dual_tconorm(const OperatorSpec& tnorm_spec,
                    std::span<const double> xs) {
  if (operator_class(tnorm_spec.family) != OperatorClass::TNorm) {
    throw UsageError("dual_tconorm: spec is not a t-norm");
  }
  std::vector<double> complements(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) complements[i] = 1.0 - xs[i];
  return 1.0 - aggregate(tnorm_spec, complements).value;
}

}  // namespace aggfit

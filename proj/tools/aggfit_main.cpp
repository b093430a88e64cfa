// aggfit: fit fuzzy aggregation operators to labeled datasets, report the
// per-operator accuracy table, persist the selected model, and classify new
// instances with it.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aggfit/dataset_io.hpp"
#include "aggfit/detail/text.hpp"
#include "aggfit/fitter.hpp"
#include "aggfit/fuzzify.hpp"
#include "aggfit/kernels.hpp"
#include "aggfit/operators.hpp"

namespace {

using namespace aggfit;

struct Stage {
  std::string name = "startup";
};

struct CommonFitOptions {
  std::string data_path;
  std::string schema_path;
  int steps = 1000;
  std::string sigmoid = "corrected";
  std::string format = "table";
  std::string bounds = "overlap";
  bool include_dubois = false;
  std::vector<std::string> grid_overrides;
};

SigmoidForm parse_sigmoid(const std::string& s) {
  if (s == "corrected") return SigmoidForm::Corrected;
  if (s == "literal") return SigmoidForm::Literal;
  throw UsageError("--sigmoid must be 'corrected' or 'literal'");
}

ReportFormat parse_format(const std::string& s) {
  if (s == "table") return ReportFormat::PlainTable;
  if (s == "delimited") return ReportFormat::Delimited;
  throw UsageError("--format must be 'table' or 'delimited'");
}

FitConfig build_config(const CommonFitOptions& opt) {
  FitConfig config;
  config.step_count = opt.steps;
  if (opt.bounds == "overlap") {
    config.bounds = SweepBoundsPolicy::OverlapRegion;
  } else if (opt.bounds == "full") {
    config.bounds = SweepBoundsPolicy::FullRange;
  } else {
    throw UsageError("--bounds must be 'overlap' or 'full'");
  }
  for (const std::string& spec : opt.grid_overrides) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--grid expects <family>=<v1,v2,...>, got '" + spec +
                       "'");
    }
    const auto family = family_from_id(spec.substr(0, eq));
    if (!family) {
      throw UsageError("--grid: unknown family '" + spec.substr(0, eq) + "'");
    }
    std::vector<double> values;
    std::string token;
    std::istringstream rest(spec.substr(eq + 1));
    while (std::getline(rest, token, ',')) {
      const auto v = detail::parse_double(token);
      if (!v) throw UsageError("--grid: bad value '" + token + "'");
      validate_spec(OperatorSpec(*family, *v));
      values.push_back(*v);
    }
    if (values.empty()) throw UsageError("--grid: empty value list");
    config.param_grid[*family] = std::move(values);
  }
  return config;
}

std::vector<OperatorFamily> build_roster(bool include_dubois) {
  const auto base = default_fit_roster();
  std::vector<OperatorFamily> roster(base.begin(), base.end());
  if (include_dubois) {
    roster.insert(roster.begin() + 10, OperatorFamily::DuboisUnion);
  }
  return roster;
}

struct PipelineResult {
  FuzzifiedDataset data;
  std::vector<FittedModel> models;
  FitReport report;
};

PipelineResult run_pipeline(const CommonFitOptions& opt, Stage& stage) {
  stage.name = "schema";
  const DatasetSchema schema = load_schema(opt.schema_path);
  stage.name = "load";
  const RawDataset raw = load_dataset(opt.data_path, schema);
  stage.name = "preprocess";
  const RawDataset prepared = preprocess(raw);
  stage.name = "fuzzify";
  PipelineResult result;
  result.data = fuzzify_dataset(prepared, parse_sigmoid(opt.sigmoid));
  stage.name = "fit";
  const FitConfig config = build_config(opt);
  const auto roster = build_roster(opt.include_dubois);
  result.models = fit_all(roster, result.data, config);
  result.report = make_report(result.models, schema.dataset_name);
  return result;
}

void print_selection(const FittedModel& best) {
  std::cout << "\nSelected operator: " << family_display_name(best.spec.family);
  if (best.spec.param) {
    std::cout << " (param " << detail::format_double(*best.spec.param) << ")";
  }
  std::cout << "\nThresholds:";
  if (best.thresholds.empty()) std::cout << " (single class)";
  for (const double t : best.thresholds) {
    std::cout << ' ' << detail::format_double(t);
  }
  std::cout << "\nTraining accuracy: " << best.correct_count << "/"
            << best.instance_count << " = " << 100.0 * best.train_accuracy
            << "%\n";
}

int cmd_fit(const CommonFitOptions& opt, const std::string& model_path,
            const std::string& report_path, Stage& stage) {
  PipelineResult result = run_pipeline(opt, stage);

  stage.name = "report";
  write_report(result.report, std::cout, parse_format(opt.format));
  if (!report_path.empty()) {
    export_report(result.report, report_path, parse_format(opt.format));
  }

  stage.name = "select";
  const FittedModel& best = select_operator(result.models);
  stage.name = "save";
  save_model(best, model_path);
  print_selection(best);
  std::cerr << "model written to " << model_path << "\n";
  return 0;
}

int cmd_report(const CommonFitOptions& opt, const std::string& out_path,
               Stage& stage) {
  PipelineResult result = run_pipeline(opt, stage);
  stage.name = "report";
  write_report(result.report, std::cout, parse_format(opt.format));
  if (!out_path.empty()) {
    export_report(result.report, out_path, parse_format(opt.format));
  }
  const FittedModel& best = select_operator(result.models);
  print_selection(best);
  return 0;
}

std::vector<std::optional<std::string>> split_instance(
    const std::string& line, char delimiter, const std::string& missing) {
  std::vector<std::optional<std::string>> cells;
  std::string token;
  std::istringstream in(line);
  while (std::getline(in, token, delimiter)) {
    const auto trimmed = std::string(detail::trim(token));
    if (trimmed == missing || trimmed.empty()) {
      cells.push_back(std::nullopt);
    } else {
      cells.push_back(trimmed);
    }
  }
  return cells;
}

int cmd_classify(const std::string& model_path,
                 const std::vector<std::string>& instances,
                 const std::string& data_path, const std::string& delimiter,
                 const std::string& missing, Stage& stage) {
  stage.name = "model";
  const FittedModel model = load_model(model_path);
  const char delim = delimiter.size() == 1 ? delimiter[0] : ',';

  std::vector<std::string> lines = instances;
  if (!data_path.empty()) {
    std::ifstream in(data_path);
    if (!in) throw LoadError("cannot open instance file " + data_path);
    std::string line;
    while (std::getline(in, line)) {
      if (!detail::trim(line).empty()) lines.push_back(line);
    }
  }
  if (lines.empty()) {
    throw UsageError("classify: provide --instance values or --data file");
  }

  stage.name = "classify";
  const std::size_t width = model.fuzz_params.size();
  for (const std::string& line : lines) {
    auto cells = split_instance(line, delim, missing);
    if (cells.size() == width + 1) cells.pop_back();  // trailing class column
    const auto memberships =
        fuzzify_instance(model.fuzz_params, model.sigmoid_form, cells);
    std::cout << classify(model, memberships) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// validate: operator axiom self-test

struct CheckTarget {
  std::string name;
  OperatorClass op_class;
  bool domain_open;  // rejects exact 0/1 inputs (Dombi, Dubois)
  std::function<double(std::span<const double>)> eval;
};

std::vector<CheckTarget> build_targets(bool inject_fault) {
  std::vector<CheckTarget> targets;
  for (const OperatorFamily family : full_roster()) {
    const bool open = family == OperatorFamily::DombiIntersection ||
                      family == OperatorFamily::DombiUnion ||
                      family == OperatorFamily::DuboisUnion;
    if (!is_parametrized(family)) {
      targets.push_back({std::string(family_id(family)),
                         operator_class(family), open,
                         [family](std::span<const double> xs) {
                           return aggregate(OperatorSpec(family), xs).value;
                         }});
      continue;
    }
    for (const double p : default_param_grid(family)) {
      targets.push_back({std::string(family_id(family)) + "(" +
                             detail::format_double(p) + ")",
                         operator_class(family), open,
                         [family, p](std::span<const double> xs) {
                           return aggregate(OperatorSpec(family, p), xs).value;
                         }});
    }
  }
  if (inject_fault) {
    targets.push_back({"InjectedFault", OperatorClass::Averaging, false,
                       [](std::span<const double> xs) {
                         return xs[0] < 0.5 ? xs[0] + 0.3 : xs[0] - 0.3;
                       }});
  }
  return targets;
}

int cmd_validate(int samples, std::uint64_t seed, bool inject_fault) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::uniform_int_distribution<int> arity(2, 19);
  constexpr double kTol = 1e-12;

  const auto targets = build_targets(inject_fault);
  std::map<std::string, std::vector<std::string>> failures;
  const auto note = [&](const std::string& axiom, const CheckTarget& t) {
    auto& list = failures[axiom];
    if (std::find(list.begin(), list.end(), t.name) == list.end()) {
      list.push_back(t.name);
    }
  };

  std::vector<double> xs, ys;
  for (const CheckTarget& t : targets) {
    for (int s = 0; s < samples; ++s) {
      const int n = arity(rng);
      xs.resize(n);
      for (double& x : xs) x = unit(rng);

      const double v = t.eval(xs);
      const double lo = *std::min_element(xs.begin(), xs.end());
      const double hi = *std::max_element(xs.begin(), xs.end());

      if (!(v >= 0.0 && v <= 1.0)) note("range", t);

      switch (t.op_class) {
        case OperatorClass::TNorm:
          if (v > lo + kTol) note("ordering", t);
          break;
        case OperatorClass::TConorm:
          if (v < hi - kTol) note("ordering", t);
          break;
        case OperatorClass::Averaging:
          if (v < lo - kTol || v > hi + kTol) note("ordering", t);
          break;
      }

      // bump one coordinate and require a non-decreasing result
      ys = xs;
      const int j = static_cast<int>(rng() % xs.size());
      ys[j] = ys[j] + (0.999 - ys[j]) * unit(rng);
      if (t.eval(ys) < v - kTol) note("monotonicity", t);
    }

    // boundary conditions touch exact 0/1, outside the open-domain families
    if (!t.domain_open) {
      xs = {unit(rng), 0.0};
      ys = {1.0, 1.0, 1.0};
      const std::vector<double> zs = {unit(rng), 1.0};
      const std::vector<double> os = {0.0, 0.0, 0.0};
      switch (t.op_class) {
        case OperatorClass::TNorm:
          if (std::abs(t.eval(xs)) > kTol) note("boundary", t);
          if (std::abs(t.eval(ys) - 1.0) > kTol) note("boundary", t);
          break;
        case OperatorClass::TConorm:
          if (std::abs(t.eval(zs) - 1.0) > kTol) note("boundary", t);
          if (std::abs(t.eval(os)) > kTol) note("boundary", t);
          break;
        default:
          break;  // averaging operators have no boundary axiom
      }
    } else {
      bool threw = false;
      try {
        xs = {0.5, 1.0};
        t.eval(xs);
      } catch (const DomainError&) {
        threw = true;
      }
      if (!threw) note("domain-guard", t);
    }
  }

  // duality of the built-in pairs (Eq-style De Morgan check)
  {
    const CheckTarget dual_probe{"duality", OperatorClass::TNorm, false, {}};
    for (int s = 0; s < samples; ++s) {
      xs = {unit(rng), unit(rng)};
      const struct {
        OperatorFamily tnorm;
        OperatorFamily tconorm;
      } pairs[] = {
          {OperatorFamily::AlgebraicProduct, OperatorFamily::AlgebraicSum},
          {OperatorFamily::EinsteinProduct, OperatorFamily::EinsteinSum},
          {OperatorFamily::Min, OperatorFamily::Max},
      };
      for (const auto& pair : pairs) {
        const double via_dual = dual_tconorm(OperatorSpec(pair.tnorm), xs);
        const double direct = aggregate(OperatorSpec(pair.tconorm), xs).value;
        if (std::abs(via_dual - direct) > kTol) note("duality", dual_probe);
      }
    }
  }

  // special-case parameter reductions
  {
    const CheckTarget red{"reductions", OperatorClass::TNorm, false, {}};
    for (int s = 0; s < samples; ++s) {
      const int n = arity(rng);
      xs.resize(n);
      for (double& x : xs) x = unit(rng);
      const double vmin = *std::min_element(xs.begin(), xs.end());
      const double vmax = *std::max_element(xs.begin(), xs.end());
      double mean = 0.0;
      for (const double x : xs) mean += x;
      mean /= static_cast<double>(n);

      if (aggregate(OperatorSpec(OperatorFamily::HamacherProduct, 1.0), xs)
              .value !=
          aggregate(OperatorSpec(OperatorFamily::AlgebraicProduct), xs).value) {
        note("reductions", red);
      }
      if (aggregate(OperatorSpec(OperatorFamily::FuzzyAnd, 1.0), xs).value !=
          vmin) {
        note("reductions", red);
      }
      if (std::abs(aggregate(OperatorSpec(OperatorFamily::FuzzyAnd, 0.0), xs)
                       .value -
                   mean) > kTol) {
        note("reductions", red);
      }
      if (aggregate(OperatorSpec(OperatorFamily::ConvexMin, 1.0), xs).value !=
          vmin) {
        note("reductions", red);
      }
      if (aggregate(OperatorSpec(OperatorFamily::ConvexMin, 0.0), xs).value !=
          vmax) {
        note("reductions", red);
      }
      // Dombi at lambda 50 approaches min/max; convergence needs separated
      // arguments, so resample until the pair is 0.1 apart.
      double a = unit(rng), b = unit(rng);
      while (std::abs(a - b) < 0.1) b = unit(rng);
      const std::vector<double> pair = {a, b};
      if (std::abs(
              aggregate(OperatorSpec(OperatorFamily::DombiIntersection, 50.0),
                        pair)
                  .value -
              std::min(a, b)) > 1e-6) {
        note("reductions", red);
      }
      if (std::abs(aggregate(OperatorSpec(OperatorFamily::DombiUnion, 50.0),
                             pair)
                       .value -
                   std::max(a, b)) > 1e-6) {
        note("reductions", red);
      }
    }
  }

  const char* axioms[] = {"range",    "monotonicity", "boundary",
                          "ordering", "duality",      "reductions",
                          "domain-guard"};
  int failed = 0;
  for (const char* axiom : axioms) {
    const auto it = failures.find(axiom);
    if (it == failures.end()) {
      std::cout << axiom << ": PASS\n";
      continue;
    }
    ++failed;
    std::cout << axiom << ": FAIL (";
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << it->second[i];
    }
    std::cout << ")\n";
  }
  std::cout << (failed == 0 ? "all axiom checks passed"
                            : "axiom violations detected")
            << " [" << targets.size() << " operator variants, " << samples
            << " samples each, "
            << (kernels::active_isa() == kernels::Isa::Avx2 ? "avx2"
                                                            : "scalar")
            << " kernels]\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit fuzzy aggregation operators to labeled data"};
  app.require_subcommand(1);

  CommonFitOptions fit_opt;
  std::string model_path, report_path;

  CLI::App* fit = app.add_subcommand(
      "fit", "Fit every operator, print the report, save the best model");
  fit->add_option("--data", fit_opt.data_path, "Data file")->required();
  fit->add_option("--schema", fit_opt.schema_path, "Schema file")->required();
  fit->add_option("--model", model_path, "Output model file")->required();
  fit->add_option("--report", report_path, "Also write the report here");
  fit->add_option("--steps", fit_opt.steps, "Threshold grid resolution");
  fit->add_option("--sigmoid", fit_opt.sigmoid, "corrected|literal");
  fit->add_option("--format", fit_opt.format, "table|delimited");
  fit->add_option("--bounds", fit_opt.bounds, "overlap|full sweep bounds");
  fit->add_option("--grid", fit_opt.grid_overrides,
                  "Override a parameter grid: <family>=<v1,v2,...>");
  fit->add_flag("--include-dubois", fit_opt.include_dubois,
                "Also fit the Dubois union");

  CommonFitOptions rep_opt;
  std::string rep_out;
  CLI::App* rep = app.add_subcommand(
      "report", "Fit every operator and print the report (no model file)");
  rep->add_option("--data", rep_opt.data_path, "Data file")->required();
  rep->add_option("--schema", rep_opt.schema_path, "Schema file")->required();
  rep->add_option("--out", rep_out, "Also write the report here");
  rep->add_option("--steps", rep_opt.steps, "Threshold grid resolution");
  rep->add_option("--sigmoid", rep_opt.sigmoid, "corrected|literal");
  rep->add_option("--format", rep_opt.format, "table|delimited");
  rep->add_option("--bounds", rep_opt.bounds, "overlap|full sweep bounds");
  rep->add_option("--grid", rep_opt.grid_overrides,
                  "Override a parameter grid: <family>=<v1,v2,...>");
  rep->add_flag("--include-dubois", rep_opt.include_dubois,
                "Also fit the Dubois union");

  std::string cls_model, cls_data, cls_delim = ",", cls_missing = "?";
  std::vector<std::string> cls_instances;
  CLI::App* cls = app.add_subcommand(
      "classify", "Classify raw instances with a saved model");
  cls->add_option("--model", cls_model, "Model file")->required();
  cls->add_option("--instance", cls_instances,
                  "Delimited raw instance (repeatable)");
  cls->add_option("--data", cls_data, "File of instances, one per line");
  cls->add_option("--delimiter", cls_delim, "Instance delimiter");
  cls->add_option("--missing", cls_missing, "Missing value marker");

  int val_samples = 1000;
  std::uint64_t val_seed = 910057;
  bool val_fault = false;
  CLI::App* val =
      app.add_subcommand("validate", "Run the operator axiom self-test");
  val->add_option("--samples", val_samples, "Random samples per axiom");
  val->add_option("--seed", val_seed, "Sampling seed");
  val->add_flag("--inject-fault", val_fault,
                "Inject a broken operator (self-test of the checker)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  Stage stage;
  try {
    if (fit->parsed()) {
      return cmd_fit(fit_opt, model_path, report_path, stage);
    }
    if (rep->parsed()) {
      return cmd_report(rep_opt, rep_out, stage);
    }
    if (cls->parsed()) {
      return cmd_classify(cls_model, cls_instances, cls_data, cls_delim,
                          cls_missing, stage);
    }
    if (val->parsed()) {
      stage.name = "validate";
      return cmd_validate(val_samples, val_seed, val_fault);
    }
  } catch (const Error& e) {
    std::cerr << "aggfit: " << stage.name << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "aggfit: " << stage.name << ": unexpected error: " << e.what()
              << "\n";
    return 1;
  }
  return 0;
}

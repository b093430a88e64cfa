#include "aggfit/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "aggfit/detail/text.hpp"

namespace aggfit {

using detail::format_double;
using detail::parse_double;
using detail::trim;

namespace {

constexpr int kModelVersion = 1;

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      return out;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

/// Splits "key = value"; returns false for lines that are not assignments.
bool split_key_value(std::string_view line, std::string* key,
                     std::string* value) {
  const std::size_t eq = line.find('=');
  if (eq == std::string_view::npos) return false;
  *key = std::string(trim(line.substr(0, eq)));
  *value = std::string(trim(line.substr(eq + 1)));
  return !key->empty();
}

char parse_delimiter(const std::string& value, const std::string& where) {
  if (value == "comma" || value == ",") return ',';
  if (value == "space") return ' ';
  if (value == "tab") return '\t';
  if (value.size() == 1) return value[0];
  throw SchemaError(where + ": bad delimiter '" + value + "'");
}

AttributeKind parse_kind(const std::string& value, const std::string& where) {
  if (value == "nominal") return AttributeKind::Nominal;
  if (value == "ordinal") return AttributeKind::Ordinal;
  if (value == "class") return AttributeKind::Class;
  throw SchemaError(where + ": bad attribute kind '" + value + "'");
}

MembershipKind parse_membership(const std::string& value,
                                const std::string& where) {
  if (value == "gaussian") return MembershipKind::Gaussian;
  if (value == "sigmoid") return MembershipKind::Sigmoid;
  throw SchemaError(where + ": bad membership '" + value + "'");
}

double parse_real(const std::string& value, const std::string& where) {
  const auto v = parse_double(value);
  if (!v) throw SchemaError(where + ": bad number '" + value + "'");
  return *v;
}

}  // namespace

DatasetSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open schema file " + path.string());

  DatasetSchema schema;
  schema.dataset_name = path.stem().string();

  AttributeSpec* current = nullptr;
  std::optional<double> pending_x1, pending_x2;
  std::size_t line_no = 0;
  std::string raw_line;

  const auto finish_attribute = [&](const std::string& where) {
    if (!current) return;
    if (pending_x1.has_value() != pending_x2.has_value()) {
      throw SchemaError(where + ": attribute '" + current->name +
                        "' needs both x1 and x2 or neither");
    }
    if (pending_x1) {
      if (!(*pending_x1 < *pending_x2)) {
        throw SchemaError(where + ": attribute '" + current->name +
                          "' needs x1 < x2");
      }
      current->explicit_range = {*pending_x1, *pending_x2};
    }
    pending_x1.reset();
    pending_x2.reset();
  };

  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);

    if (line == "[attribute]") {
      finish_attribute(where);
      schema.attributes.emplace_back();
      current = &schema.attributes.back();
      continue;
    }

    std::string key, value;
    if (!split_key_value(line, &key, &value)) {
      throw SchemaError(where + ": expected 'key = value' or '[attribute]'");
    }

    if (!current) {
      if (key == "dataset") {
        schema.dataset_name = value;
      } else if (key == "delimiter") {
        schema.delimiter = parse_delimiter(value, where);
      } else if (key == "missing") {
        schema.missing_marker = value;
      } else if (key == "class_labels") {
        schema.class_label_order = split(value, ',');
      } else {
        throw SchemaError(where + ": unknown dataset key '" + key + "'");
      }
      continue;
    }

    if (key == "name") {
      current->name = value;
    } else if (key == "kind") {
      current->kind = parse_kind(value, where);
    } else if (key == "membership") {
      current->membership = parse_membership(value, where);
    } else if (key == "x1") {
      pending_x1 = parse_real(value, where);
    } else if (key == "x2") {
      pending_x2 = parse_real(value, where);
    } else {
      throw SchemaError(where + ": unknown attribute key '" + key + "'");
    }
  }
  finish_attribute(path.string());

  if (schema.attributes.empty()) {
    throw SchemaError(path.string() + ": schema declares no attributes");
  }
  std::size_t class_count = 0;
  for (std::size_t c = 0; c < schema.attributes.size(); ++c) {
    if (schema.attributes[c].name.empty()) {
      schema.attributes[c].name = "attr" + std::to_string(c + 1);
    }
    class_count += schema.attributes[c].kind == AttributeKind::Class;
  }
  if (class_count != 1) {
    throw SchemaError(path.string() + ": schema must declare exactly one " +
                      "class attribute, got " + std::to_string(class_count));
  }
  return schema;
}

RawDataset load_dataset(const std::filesystem::path& data_path,
                        const DatasetSchema& schema) {
  std::ifstream in(data_path);
  if (!in) throw LoadError("cannot open data file " + data_path.string());

  std::size_t class_col = 0;
  for (std::size_t c = 0; c < schema.attributes.size(); ++c) {
    if (schema.attributes[c].kind == AttributeKind::Class) class_col = c;
  }

  RawDataset raw;
  raw.schema = schema.attributes;
  raw.class_label_order = schema.class_label_order;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where =
        data_path.filename().string() + ":" + std::to_string(line_no);

    std::vector<std::string> fields = split(line, schema.delimiter);
    if (fields.size() != schema.attributes.size()) {
      throw LoadError(where + ": expected " +
                      std::to_string(schema.attributes.size()) +
                      " fields, got " + std::to_string(fields.size()));
    }

    std::vector<std::optional<std::string>> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const AttributeSpec& attr = schema.attributes[c];
      if (fields[c] == schema.missing_marker) {
        if (c == class_col) {
          throw LoadError(where + ": class value is missing");
        }
        continue;  // stays nullopt
      }
      if (attr.kind == AttributeKind::Ordinal && !parse_double(fields[c])) {
        throw LoadError(where + ": attribute '" + attr.name +
                        "' is not numeric: '" + fields[c] + "'");
      }
      if (c == class_col && !schema.class_label_order.empty() &&
          std::find(schema.class_label_order.begin(),
                    schema.class_label_order.end(),
                    fields[c]) == schema.class_label_order.end()) {
        throw DataError(where + ": unknown class label '" + fields[c] + "'");
      }
      row[c] = std::move(fields[c]);
    }
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

RawDataset load_dataset(const std::filesystem::path& data_path,
                        const std::filesystem::path& schema_path) {
  return load_dataset(data_path, load_schema(schema_path));
}

namespace {

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string join_strings(std::span<const std::string> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += values[i];
  }
  return out;
}

const char* kind_name(AttributeKind k) {
  switch (k) {
    case AttributeKind::Nominal:
      return "nominal";
    case AttributeKind::Ordinal:
      return "ordinal";
    default:
      return "class";
  }
}

const char* membership_name(MembershipKind m) {
  return m == MembershipKind::Gaussian ? "gaussian" : "sigmoid";
}

}  // namespace

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw WriteError("cannot open " + path.string() + " for writing");

  out << "aggfit_model_version = " << kModelVersion << '\n';
  out << "family = " << family_id(model.spec.family) << '\n';
  out << "param = "
      << (model.spec.param ? format_double(*model.spec.param) : "none")
      << '\n';
  out << "sigmoid_form = "
      << (model.sigmoid_form == SigmoidForm::Corrected ? "corrected"
                                                       : "literal")
      << '\n';
  out << "class_labels = " << join_strings(model.class_labels) << '\n';
  out << "thresholds = " << join_doubles(model.thresholds) << '\n';
  out << "train_accuracy = " << format_double(model.train_accuracy) << '\n';
  out << "correct = " << model.correct_count << '\n';
  out << "instances = " << model.instance_count << '\n';
  out << "satisfactory = " << (model.satisfactory ? 1 : 0) << '\n';
  out << "unambiguous = " << model.unambiguous_count << '\n';
  out << "attributes = " << model.fuzz_params.size() << '\n';
  for (const FuzzParams& p : model.fuzz_params) {
    out << "\n[attribute]\n";
    out << "name = " << p.name << '\n';
    out << "kind = " << kind_name(p.kind) << '\n';
    out << "membership = " << membership_name(p.membership) << '\n';
    out << "x1 = " << format_double(p.x1) << '\n';
    out << "x2 = " << format_double(p.x2) << '\n';
    out << "mean = " << format_double(p.mean) << '\n';
    if (!p.nominal_lo.empty() || !p.nominal_hi.empty()) {
      out << "lo = " << p.nominal_lo << '\n';
      out << "hi = " << p.nominal_hi << '\n';
    }
  }
  if (!out) throw WriteError("failed writing model to " + path.string());
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model file " + path.string());

  FittedModel model;
  std::map<std::string, std::string> head;
  std::vector<std::map<std::string, std::string>> attrs;
  bool in_attribute = false;

  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[attribute]") {
      attrs.emplace_back();
      in_attribute = true;
      continue;
    }
    std::string key, value;
    if (!split_key_value(line, &key, &value)) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    if (in_attribute) {
      attrs.back()[key] = value;
    } else {
      head[key] = value;
    }
  }

  const auto need = [&](const std::map<std::string, std::string>& kv,
                        const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw FormatError(path.string() + ": missing key '" + key +
                        "' (truncated file?)");
    }
    return it->second;
  };
  const auto need_real = [&](const std::map<std::string, std::string>& kv,
                             const std::string& key) {
    const auto v = parse_double(need(kv, key));
    if (!v) {
      throw FormatError(path.string() + ": key '" + key +
                        "' is not a number");
    }
    return *v;
  };

  if (need_real(head, "aggfit_model_version") != kModelVersion) {
    throw FormatError(path.string() + ": unsupported model version " +
                      head["aggfit_model_version"]);
  }

  const std::string& family_name = need(head, "family");
  const auto family = family_from_id(family_name);
  if (!family) {
    throw FormatError(path.string() + ": unknown operator family '" +
                      family_name + "'");
  }
  model.spec = OperatorSpec(*family);
  if (const std::string& p = need(head, "param"); p != "none") {
    const auto v = parse_double(p);
    if (!v) throw FormatError(path.string() + ": bad param '" + p + "'");
    model.spec.param = *v;
  }
  validate_spec(model.spec);

  const std::string& form = need(head, "sigmoid_form");
  if (form == "corrected") {
    model.sigmoid_form = SigmoidForm::Corrected;
  } else if (form == "literal") {
    model.sigmoid_form = SigmoidForm::Literal;
  } else {
    throw FormatError(path.string() + ": bad sigmoid_form '" + form + "'");
  }

  model.class_labels = split(need(head, "class_labels"), ',');
  if (const std::string& t = need(head, "thresholds"); !t.empty()) {
    for (const std::string& tok : split(t, ',')) {
      const auto v = parse_double(tok);
      if (!v) {
        throw FormatError(path.string() + ": bad threshold '" + tok + "'");
      }
      model.thresholds.push_back(*v);
    }
  }
  if (model.class_labels.empty() ||
      model.thresholds.size() + 1 != model.class_labels.size()) {
    throw FormatError(path.string() + ": expected " +
                      std::to_string(model.class_labels.size()) +
                      " class labels with one fewer threshold");
  }
  model.train_accuracy = need_real(head, "train_accuracy");
  model.correct_count = static_cast<std::size_t>(need_real(head, "correct"));
  model.instance_count =
      static_cast<std::size_t>(need_real(head, "instances"));
  model.satisfactory = need_real(head, "satisfactory") != 0;
  model.unambiguous_count =
      static_cast<std::size_t>(need_real(head, "unambiguous"));

  const auto declared =
      static_cast<std::size_t>(need_real(head, "attributes"));
  if (declared != attrs.size()) {
    throw FormatError(path.string() + ": expected " +
                      std::to_string(declared) + " attribute sections, got " +
                      std::to_string(attrs.size()) + " (truncated file?)");
  }

  for (const auto& kv : attrs) {
    FuzzParams p;
    p.name = need(kv, "name");
    const std::string& kind = need(kv, "kind");
    if (kind == "nominal") {
      p.kind = AttributeKind::Nominal;
    } else if (kind == "ordinal") {
      p.kind = AttributeKind::Ordinal;
    } else {
      throw FormatError(path.string() + ": bad attribute kind '" + kind + "'");
    }
    const std::string& memb = need(kv, "membership");
    if (memb == "gaussian") {
      p.membership = MembershipKind::Gaussian;
    } else if (memb == "sigmoid") {
      p.membership = MembershipKind::Sigmoid;
    } else {
      throw FormatError(path.string() + ": bad membership '" + memb + "'");
    }
    p.x1 = need_real(kv, "x1");
    p.x2 = need_real(kv, "x2");
    p.mean = need_real(kv, "mean");
    if (const auto it = kv.find("lo"); it != kv.end()) p.nominal_lo = it->second;
    if (const auto it = kv.find("hi"); it != kv.end()) p.nominal_hi = it->second;
    model.fuzz_params.push_back(std::move(p));
  }
  return model;
}

namespace {

const char* class_heading(OperatorClass c) {
  switch (c) {
    case OperatorClass::TNorm:
      return "T-norms";
    case OperatorClass::TConorm:
      return "T-conorms";
    default:
      return "Averaging";
  }
}

std::string threshold_cell(const FitReportRow& row) {
  if (!row.satisfactory) return "non-satisfactory";
  std::string out;
  for (std::size_t i = 0; i < row.thresholds.size(); ++i) {
    if (i) out += ", ";
    out += format_double(row.thresholds[i]);
  }
  return out;
}

void write_plain_table(const FitReport& report, std::ostream& out) {
  out << "Result of " << report.dataset_name << " ("
      << report.instance_count << " instances)\n\n";
  out << std::left << std::setw(11) << "Class" << std::setw(28) << "Operator"
      << std::setw(9) << "Param" << std::setw(34) << "Threshold point"
      << std::setw(9) << "Correct"
      << "Accuracy %\n";
  out << std::string(100, '-') << '\n';
  OperatorClass last = OperatorClass::Averaging;
  bool first = true;
  for (const FitReportRow& row : report.rows) {
    const bool new_group = first || row.op_class != last;
    out << std::left << std::setw(11)
        << (new_group ? class_heading(row.op_class) : "") << std::setw(28)
        << family_display_name(row.family) << std::setw(9)
        << (row.param ? format_double(*row.param) : "-") << std::setw(34)
        << threshold_cell(row) << std::setw(9) << row.correct_count
        << std::fixed << std::setprecision(4) << row.accuracy_pct << '\n';
    out.unsetf(std::ios_base::fixed);
    out << std::setprecision(6);
    last = row.op_class;
    first = false;
  }
}

void write_delimited(const FitReport& report, std::ostream& out) {
  out << "class,operator,param,thresholds,correct,accuracy_pct,"
         "satisfactory\n";
  for (const FitReportRow& row : report.rows) {
    out << class_heading(row.op_class) << ',' << family_id(row.family) << ','
        << (row.param ? format_double(*row.param) : "none") << ',';
    for (std::size_t i = 0; i < row.thresholds.size(); ++i) {
      if (i) out << ';';
      out << format_double(row.thresholds[i]);
    }
    out << ',' << row.correct_count << ','
        << format_double(row.accuracy_pct) << ','
        << (row.satisfactory ? 1 : 0) << '\n';
  }
}

}  // namespace

void write_report(const FitReport& report, std::ostream& out,
                  ReportFormat format) {
  if (report.rows.empty()) {
    throw UsageError("write_report: empty report");
  }
  if (format == ReportFormat::PlainTable) {
    write_plain_table(report, out);
  } else {
    write_delimited(report, out);
  }
  if (!out) throw WriteError("failed writing report");
}

void export_report(const FitReport& report, const std::filesystem::path& path,
                   ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw WriteError("cannot open " + path.string() + " for writing");
  write_report(report, out, format);
  if (!out) throw WriteError("failed writing report to " + path.string());
}

}  // namespace aggfit

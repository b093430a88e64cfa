#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aggfit/fitter.hpp"
#include "aggfit/fuzzify.hpp"

namespace aggfit {

/// Parsed schema file: dataset-level keys plus one [attribute] section per
/// column, in column order.
struct DatasetSchema {
  std::string dataset_name;
  char delimiter = ',';
  std::string missing_marker = "?";
  std::vector<AttributeSpec> attributes;
  std::vector<std::string> class_label_order;  // optional explicit ordering
};

DatasetSchema load_schema(const std::filesystem::path& path);

/// Reads a delimited data file against a schema. Rows keep file order;
/// missing markers become missing cells; ordinal cells must parse as numbers.
RawDataset load_dataset(const std::filesystem::path& data_path,
                        const DatasetSchema& schema);
RawDataset load_dataset(const std::filesystem::path& data_path,
                        const std::filesystem::path& schema_path);

void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

enum class ReportFormat { PlainTable, Delimited };

void write_report(const FitReport& report, std::ostream& out,
                  ReportFormat format);
void export_report(const FitReport& report, const std::filesystem::path& path,
                   ReportFormat format);

}  // namespace aggfit

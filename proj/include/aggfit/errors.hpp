#pragma once

#include <stdexcept>
#include <string>

namespace aggfit {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller misuse: empty input, width mismatch, wrong operator class.
struct UsageError : Error {
  using Error::Error;
};

/// Operator parameter outside the family's valid range.
struct ParameterError : Error {
  using Error::Error;
};

/// Input outside an operator's numeric domain (e.g. Dombi at exactly 0 or 1).
struct DomainError : Error {
  using Error::Error;
};

/// Invalid attribute schema (zero or multiple class attributes, >2 nominal values).
struct SchemaError : Error {
  using Error::Error;
};

/// Invalid data content (fully-missing column, unknown class label, zero width).
struct DataError : Error {
  using Error::Error;
};

/// Malformed data file; message names the offending line.
struct LoadError : Error {
  using Error::Error;
};

/// Malformed or incompatible model/report file.
struct FormatError : Error {
  using Error::Error;
};

/// I/O failure while writing an output file.
struct WriteError : Error {
  using Error::Error;
};

}  // namespace aggfit

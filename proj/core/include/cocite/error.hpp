#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cocite {

enum class ErrorCode {
  InvalidArgument,
  InvalidMatrix,
  Overflow,
  ZeroVarianceColumn,
  ZeroNormColumn,
  OutOfRange,
  NegativeResult,
  DegenerateInput,
  DimensionTooLarge,
  DegenerateConfiguration,
  NoConvergence,
  DisconnectedGraph,
  MalformedLine,
  DuplicateDocId,
  NegativeCount,
  AsymmetricInput,
  LabelMismatch,
  UnknownDataset,
};

/// Name of the module that owns an error code, e.g. "proximity".
std::string_view error_module(ErrorCode code) noexcept;
/// Bare name of an error code, e.g. "ZeroVarianceColumn".
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `what()` is rendered as
/// "<module>::<Name>: <detail>" so command-line output names the failing
/// operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Error that carries a 1-based input line number.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& detail);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cocite

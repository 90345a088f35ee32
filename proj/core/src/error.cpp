#include "cocite/error.hpp"

namespace cocite {

std::string_view error_module(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidMatrix:
    case ErrorCode::Overflow:
      return "matrix";
    case ErrorCode::ZeroVarianceColumn:
    case ErrorCode::ZeroNormColumn:
    case ErrorCode::OutOfRange:
    case ErrorCode::NegativeResult:
      return "proximity";
    case ErrorCode::DegenerateInput:
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::DegenerateConfiguration:
      return "mds";
    case ErrorCode::NoConvergence:
      return "factor";
    case ErrorCode::DisconnectedGraph:
      return "layout";
    case ErrorCode::MalformedLine:
    case ErrorCode::DuplicateDocId:
    case ErrorCode::NegativeCount:
    case ErrorCode::AsymmetricInput:
    case ErrorCode::LabelMismatch:
    case ErrorCode::UnknownDataset:
      return "ingest";
  }
  return "cocite";
}

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ZeroVarianceColumn: return "ZeroVarianceColumn";
    case ErrorCode::ZeroNormColumn: return "ZeroNormColumn";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NegativeResult: return "NegativeResult";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::DuplicateDocId: return "DuplicateDocId";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
  }
  return "Unknown";
}

namespace {

std::string render(ErrorCode code, const std::string& detail) {
  std::string out;
  out.append(error_module(code));
  out.append("::");
  out.append(error_name(code));
  if (!detail.empty()) {
    out.append(": ");
    out.append(detail);
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(render(code, detail)), code_(code), detail_(detail) {}

ParseError::ParseError(ErrorCode code, std::size_t line, const std::string& detail)
    : Error(code, "line " + std::to_string(line) + ": " + detail), line_(line) {}

}  // namespace cocite

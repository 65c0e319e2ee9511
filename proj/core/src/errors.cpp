#include "gnplate/errors.hpp"

namespace gnplate {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotCoercive: return "NotCoercive";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AssemblyInconsistent: return "AssemblyInconsistent";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::DomainEmpty: return "DomainEmpty";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gnplate

#include "carleman/errors.hpp"

namespace carleman {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::RestrictiveConditionViolated: return "RestrictiveConditionViolated";
    case ErrorCode::ReversionImpossible: return "ReversionImpossible";
    case ErrorCode::ShiftInconsistent: return "ShiftInconsistent";
    case ErrorCode::ResonantEigenvalues: return "ResonantEigenvalues";
    case ErrorCode::Superattracting: return "Superattracting";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::ChartEscape: return "ChartEscape";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) noexcept {
  // 1 is reserved for failed verification, 2 for usage errors.
  switch (code) {
    case ErrorCode::InvalidArgument: return 3;
    case ErrorCode::ParseError: return 4;
    case ErrorCode::OrderMismatch: return 5;
    case ErrorCode::NonConvergence: return 10;
    case ErrorCode::RestrictiveConditionViolated: return 11;
    case ErrorCode::ReversionImpossible: return 12;
    case ErrorCode::ShiftInconsistent: return 13;
    case ErrorCode::ResonantEigenvalues: return 14;
    case ErrorCode::Superattracting: return 15;
    case ErrorCode::OutOfChart: return 16;
    case ErrorCode::NonConvergent: return 17;
    case ErrorCode::BranchMismatch: return 18;
    case ErrorCode::ChartEscape: return 19;
    case ErrorCode::DomainError: return 20;
  }
  return 1;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace carleman

#include "splitspan/error.hpp"

namespace splitspan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::NotTotallyDecomposable: return "NotTotallyDecomposable";
    case ErrorCode::NotTwoDecomposable: return "NotTwoDecomposable";
    case ErrorCode::GroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::TooManySplits: return "TooManySplits";
    case ErrorCode::MissingCoordinate: return "MissingCoordinate";
    case ErrorCode::TerminalValueNotBinary: return "TerminalValueNotBinary";
    case ErrorCode::NotARealisation: return "NotARealisation";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ResidueNonZero: return "ResidueNonZero";
    case ErrorCode::NotInTightSpan: return "NotInTightSpan";
    case ErrorCode::NoPreimage: return "NoPreimage";
    case ErrorCode::NoValidPathSystem: return "NoValidPathSystem";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
      return ErrorClass::Budget;
    case ErrorCode::ResidueNonZero:
    case ErrorCode::NotInTightSpan:
    case ErrorCode::NoPreimage:
    case ErrorCode::NoValidPathSystem:
    case ErrorCode::InvariantViolation:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Input;
  }
}

}  // namespace splitspan

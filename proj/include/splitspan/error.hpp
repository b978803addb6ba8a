#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace splitspan {

enum class ErrorCode {
  // input and validation
  Parse,
  InvalidArgument,
  NotSymmetric,
  NegativeEntry,
  ZeroOffDiagonal,
  TriangleViolation,
  Disconnected,
  NotSeparated,
  NotTotallyDecomposable,
  NotTwoDecomposable,
  GroundSetTooLarge,
  TooManySplits,
  MissingCoordinate,
  TerminalValueNotBinary,
  NotARealisation,
  EmptyCandidates,
  // search budget
  BudgetExceeded,
  // internal invariants; any of these on valid input is a bug report
  ResidueNonZero,
  NotInTightSpan,
  NoPreimage,
  NoValidPathSystem,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Library error. `witness` carries the indices (points, vertices, splits)
/// that demonstrate the failure, in the order documented at the throw site.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::move(message)), code_(code), witness_(std::move(witness)) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

/// Coarse classification used for process exit codes.
enum class ErrorClass { Input, Budget, Internal };

ErrorClass classify(ErrorCode code);

}  // namespace splitspan

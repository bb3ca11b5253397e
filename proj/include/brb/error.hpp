/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brb {

enum class ErrorCode {
  NotHermitian,
  DimensionOverflow,
  DimMismatch,
  BadSubsystem,
  InvalidState,
  NotUnit,
  NotDichotomic,
  InvalidScenario,
  TooLargeToEnumerate,
  OutOfRange,
  Infeasible,
  NotBellDiagonal,
  SolverFailure,
  InfeasibleConstraint,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace brb

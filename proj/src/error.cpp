/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/error.hpp"

namespace brb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadSubsystem: return "BadSubsystem";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotDichotomic: return "NotDichotomic";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotBellDiagonal: return "NotBellDiagonal";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::InfeasibleConstraint: return "InfeasibleConstraint";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace brb

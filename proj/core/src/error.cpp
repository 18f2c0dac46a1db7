// Copyright 2026 The maisac Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "maisac/error.hpp"

namespace maisac {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGeometry: return "InvalidGeometry";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kDegenerateCollinear: return "DegenerateCollinear";
    case ErrorCode::kOddNrUnsupported: return "OddNrUnsupported";
    case ErrorCode::kDegenerateCoefficient: return "DegenerateCoefficient";
    case ErrorCode::kApertureTooSmall: return "ApertureTooSmall";
    case ErrorCode::kNoFeasibleBoundary: return "NoFeasibleBoundary";
    case ErrorCode::kIterationCap: return "IterationCap";
    case ErrorCode::kDegenerateArg: return "DegenerateArg";
    case ErrorCode::kSingularActiveGram: return "SingularActiveGram";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kRepairFailed: return "RepairFailed";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace maisac

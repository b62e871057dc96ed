// Copyright 2026 The qpv Authors
//
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

#include "qpv/error.hpp"

namespace qpv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::DegenerateScale: return "DegenerateScale";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Error";
}

}  // namespace qpv

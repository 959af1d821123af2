// Copyright 2026 The lrgate Authors
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

#include "lrgate/error.hpp"

namespace lrgate {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonHermitianInput: return "NonHermitianInput";
        case ErrorCode::BadEmbedding: return "BadEmbedding";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateInvariant: return "DegenerateInvariant";
        case ErrorCode::GaugeDiscontinuity: return "GaugeDiscontinuity";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::NonUnitaryPropagator: return "NonUnitaryPropagator";
        case ErrorCode::NoRootInBracket: return "NoRootInBracket";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::UnreachablePhase: return "UnreachablePhase";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::NoCommensurateCycle: return "NoCommensurateCycle";
        case ErrorCode::BlockLeakage: return "BlockLeakage";
        case ErrorCode::ConfigParseError: return "ConfigParseError";
    }
    return "Unknown";
}

int error_exit_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigParseError: return 2;
        case ErrorCode::DegenerateInvariant: return 3;
        case ErrorCode::ConstraintViolated: return 4;
        case ErrorCode::NoCommensurateCycle: return 5;
        case ErrorCode::NonUnitaryPropagator: return 6;
        case ErrorCode::BlockLeakage: return 7;
        case ErrorCode::UnreachablePhase: return 8;
        case ErrorCode::OutOfDomain: return 9;
        case ErrorCode::NoRootInBracket: return 10;
        default: return 1;
    }
}

}  // namespace lrgate

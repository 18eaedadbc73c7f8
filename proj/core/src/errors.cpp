// Copyright 2026 The kduncert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kduncert/errors.hpp"

namespace kduncert {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare:
            return "NotSquare";
        case ErrorCode::NonFinite:
            return "NonFinite";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotUnitTrace:
            return "NotUnitTrace";
        case ErrorCode::NotPsd:
            return "NotPsd";
        case ErrorCode::EffectNotPsd:
            return "EffectNotPsd";
        case ErrorCode::IncompleteSum:
            return "IncompleteSum";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::DimMismatch:
            return "DimMismatch";
        case ErrorCode::BadRank:
            return "BadRank";
        case ErrorCode::SingularSum:
            return "SingularSum";
        case ErrorCode::BadDistribution:
            return "BadDistribution";
        case ErrorCode::BadPartition:
            return "BadPartition";
        case ErrorCode::NotProjector:
            return "NotProjector";
        case ErrorCode::BadConfig:
            return "BadConfig";
        case ErrorCode::WitnessNotFound:
            return "WitnessNotFound";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::Internal:
            return "Internal";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {
}

}  // namespace kduncert

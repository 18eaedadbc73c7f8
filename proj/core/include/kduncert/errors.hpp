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

#ifndef KDUNCERT_ERRORS_HPP
#define KDUNCERT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kduncert {

enum class ErrorCode {
    NotSquare,
    NonFinite,
    NotHermitian,
    NotUnitTrace,
    NotPsd,
    EffectNotPsd,
    IncompleteSum,
    NotUnitary,
    DimMismatch,
    BadRank,
    SingularSum,
    BadDistribution,
    BadPartition,
    NotProjector,
    BadConfig,
    WitnessNotFound,
    ParseError,
    Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `code()` names the violated
/// invariant; `what()` carries the measured deviation where there is one.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }
    /// The message without the code prefix.
    const std::string &message() const noexcept {
        return message_;
    }

   private:
    ErrorCode code_;
    std::string message_;
};

}  // namespace kduncert

#endif

// Copyright 2026 The infoclone Authors
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

#ifndef INFOCLONE_ERROR_HPP
#define INFOCLONE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace infoclone {

enum class ErrorCode {
    EmptyCouplings,
    ZeroNorm,
    NonFiniteInput,
    DimensionMismatch,
    InvalidSine,
    MissingBeta,
    EpsilonOutOfRange,
    InvalidCopies,
    AmplitudeTooLargeForCutoff,
    StateTooLarge,
    TooFewClones,
    DegenerateSignal,
    StrategyMismatch,
    TooFewTrials,
};

std::string_view to_string(ErrorCode code);

/// Validation failure raised by every public operation. `what()` is
/// "<CodeName>: <detail>" so callers can surface the code verbatim.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail);

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace infoclone

#endif

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

#include "infoclone/error.hpp"

namespace infoclone {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyCouplings:
            return "EmptyCouplings";
        case ErrorCode::ZeroNorm:
            return "ZeroNorm";
        case ErrorCode::NonFiniteInput:
            return "NonFiniteInput";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::InvalidSine:
            return "InvalidSine";
        case ErrorCode::MissingBeta:
            return "MissingBeta";
        case ErrorCode::EpsilonOutOfRange:
            return "EpsilonOutOfRange";
        case ErrorCode::InvalidCopies:
            return "InvalidCopies";
        case ErrorCode::AmplitudeTooLargeForCutoff:
            return "AmplitudeTooLargeForCutoff";
        case ErrorCode::StateTooLarge:
            return "StateTooLarge";
        case ErrorCode::TooFewClones:
            return "TooFewClones";
        case ErrorCode::DegenerateSignal:
            return "DegenerateSignal";
        case ErrorCode::StrategyMismatch:
            return "StrategyMismatch";
        case ErrorCode::TooFewTrials:
            return "TooFewTrials";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace infoclone

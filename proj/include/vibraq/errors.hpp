// Copyright 2026 The vibraq Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vibraq {

enum class ErrorCode {
    CapExceeded,
    DimensionMismatch,
    InvalidPrecision,
    SpectrumViolation,
    PerturbationInvalid,
    DegenerateGround,
    UnstableMode,
    InvalidBounds,
    PreconditionViolated,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every library failure is reported through this type; `code()` tells the
/// CLI which exit status to use.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidPrecision: return "InvalidPrecision";
        case ErrorCode::SpectrumViolation: return "SpectrumViolation";
        case ErrorCode::PerturbationInvalid: return "PerturbationInvalid";
        case ErrorCode::DegenerateGround: return "DegenerateGround";
        case ErrorCode::UnstableMode: return "UnstableMode";
        case ErrorCode::InvalidBounds: return "InvalidBounds";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace vibraq

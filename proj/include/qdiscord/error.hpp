// Copyright 2026 The qdiscord Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdiscord {

enum class ErrorKind {
    NonHermitian,
    NonUnitTrace,
    NotPositiveSemidefinite,
    DimensionMismatch,
    NumericalResidue,
    NotUnitVector,
    NotUnitary,
    InvalidDistribution,
    Domain,
    OptimizerFailure,
    Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonHermitian: return "NonHermitian";
        case ErrorKind::NonUnitTrace: return "NonUnitTrace";
        case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NumericalResidue: return "NumericalResidue";
        case ErrorKind::NotUnitVector: return "NotUnitVector";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::InvalidDistribution: return "InvalidDistribution";
        case ErrorKind::Domain: return "Domain";
        case ErrorKind::OptimizerFailure: return "OptimizerFailure";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace qdiscord

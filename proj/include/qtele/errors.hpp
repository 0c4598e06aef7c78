// Copyright 2026 The qudit-teleport Authors
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
#include <vector>

namespace qtele {

enum class ErrorKind {
    InvalidDimension,
    InvalidIndex,
    ShapeError,
    InvalidState,
    InvalidCoefficients,
    LinearlyDependent,
    InternalConsistency,
    OracleUnsupported,
    UnsupportedPriors,
    InvalidGrid,
    InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

/// Raised when some Schmidt coefficients vanish, which makes the ν-family
/// linearly dependent. `zero_indices` names the offending coefficients.
class LinearlyDependentError : public Error {
   public:
    explicit LinearlyDependentError(std::vector<int> zero_indices);

    const std::vector<int> &zero_indices() const noexcept {
        return zero_indices_;
    }

   private:
    std::vector<int> zero_indices_;
};

}  // namespace qtele

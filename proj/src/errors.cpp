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

#include "qtele/errors.hpp"

namespace qtele {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension:
            return "invalid-dimension";
        case ErrorKind::InvalidIndex:
            return "invalid-index";
        case ErrorKind::ShapeError:
            return "shape-error";
        case ErrorKind::InvalidState:
            return "invalid-state";
        case ErrorKind::InvalidCoefficients:
            return "invalid-coefficients";
        case ErrorKind::LinearlyDependent:
            return "linearly-dependent";
        case ErrorKind::InternalConsistency:
            return "internal-consistency";
        case ErrorKind::OracleUnsupported:
            return "oracle-unsupported";
        case ErrorKind::UnsupportedPriors:
            return "unsupported-priors";
        case ErrorKind::InvalidGrid:
            return "invalid-grid";
        case ErrorKind::InvalidArgument:
            return "invalid-argument";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

namespace {

std::string describe_zeros(const std::vector<int> &zeros) {
    std::string out = "Schmidt coefficients are zero at index";
    out += zeros.size() == 1 ? " " : "es ";
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += "A" + std::to_string(zeros[i]);
    }
    out += "; the nu states are linearly dependent and cannot be discriminated unambiguously";
    return out;
}

}  // namespace

LinearlyDependentError::LinearlyDependentError(std::vector<int> zero_indices)
    : Error(ErrorKind::LinearlyDependent, describe_zeros(zero_indices)), zero_indices_(std::move(zero_indices)) {
}

}  // namespace qtele

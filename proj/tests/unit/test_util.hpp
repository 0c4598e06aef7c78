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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qtele/channel.hpp"
#include "qtele/qudit.hpp"

namespace qtele::testing {

/// Random spectrum with every A_m² drawn from [floor, 1) before
/// normalization, so all coefficients stay well away from zero.
inline SchmidtSpectrum random_li_spectrum(int d, std::mt19937_64 &gen, double floor = 0.05) {
    std::uniform_real_distribution<double> dist(floor, 1.0);
    std::vector<double> squares(static_cast<std::size_t>(d));
    for (auto &v : squares) {
        v = dist(gen);
    }
    return SchmidtSpectrum::from_squares(squares, true);
}

inline double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    return max_abs(a - b);
}

inline CMatrix identity(int d) {
    return CMatrix::Identity(d, d);
}

}  // namespace qtele::testing

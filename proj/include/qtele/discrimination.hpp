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

#include <span>
#include <vector>

#include "qtele/channel.hpp"
#include "qtele/qudit.hpp"

namespace qtele {

/// Optimal unambiguous discrimination of the ν-family under uniform priors.
///
/// The unitary acts on a 2d-dimensional space: coordinates 0..d-1 are the
/// conclusive slots |u_l⟩, coordinates d..2d-1 the inconclusive slots |a_k⟩.
/// Particle-2 states enter through the first d coordinates.
struct DiscriminationPlan {
    int d;
    double failure;
    double success;
    /// Inconclusive components φ_l, length-d vectors over the |a_k⟩ basis.
    std::vector<CVector> phi;
    DenseOperator unitary;

    /// Zero-pads a length-d particle-2 vector into the 2d space.
    CVector embed(const CVector &particle2) const;
};

/// 1 − d·min A_k².
double optimal_failure(const SchmidtSpectrum &s);

/// Q_{k,l} = ⟨ν_k|ν_l⟩ − p_k δ_{k,l}.
struct QMatrix {
    int d;
    CMatrix entries;

    double min_eigenvalue() const;
};

QMatrix q_matrix(const SchmidtSpectrum &s, std::span<const double> p);

/// Brute-force check of the closed form: grid search over success
/// probabilities p ∈ {0, res, 2res, ...}^d keeping only points where Q(p) is
/// positive semidefinite (min eigenvalue ≥ −1e-10). Feasibility is
/// down-closed, so the last coordinate is bisected over the grid instead of
/// scanned. Ties on Σp go to the lexicographically smallest grid index.
struct OracleResult {
    double failure;              // 1 − mean(p) at the best grid point
    std::vector<double> best_p;
    long long evaluations;       // number of PSD checks performed
};

inline constexpr int kOracleMaxDimension = 4;

OracleResult feasibility_oracle(const SchmidtSpectrum &s, double resolution);

/// φ_l = (1/√d) Σ_k (Σ_m exp(2πi m(l−k)/d) √(A_m² − A_min²)) |a_k⟩.
std::vector<CVector> phi_states(const SchmidtSpectrum &s);

/// Order in which standard basis vectors are fed to the Gram–Schmidt
/// completion of the unitary. Empty means index order 0..2d-1.
using CompletionOrder = std::vector<int>;

DiscriminationPlan build_unitary(const SchmidtSpectrum &s, const CompletionOrder &order = {});

/// Same as build_unitary but with explicit priors; only uniform priors
/// (within 1e-12) are supported.
DiscriminationPlan build_unitary(const SchmidtSpectrum &s, std::span<const double> priors);

}  // namespace qtele

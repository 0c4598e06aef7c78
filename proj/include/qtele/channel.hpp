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

#include "qtele/qudit.hpp"
#include "qtele/rng.hpp"

namespace qtele {

/// Amplitudes below this are treated as exact zeros when deciding linear
/// independence of the ν-family.
inline constexpr double kZeroAmplitude = 1e-12;

/// Schmidt coefficients A_m ≥ 0 of the shared channel Σ_m A_m|m⟩|m⟩.
/// Order is significant; coefficients are never sorted.
class SchmidtSpectrum {
   public:
    /// Validates nonnegativity and Σ A_m² = 1 (within 1e-9). With
    /// `renormalize` an unnormalized (but nonzero) list is rescaled instead.
    explicit SchmidtSpectrum(std::vector<double> coeffs, bool renormalize = false);

    /// Builds the spectrum from squared coefficients A_m².
    static SchmidtSpectrum from_squares(std::span<const double> squares, bool renormalize = false);

    /// All A_m = 1/√d.
    static SchmidtSpectrum maximal(int d);

    int d() const noexcept {
        return static_cast<int>(coeffs_.size());
    }
    const std::vector<double> &coeffs() const noexcept {
        return coeffs_;
    }
    double operator[](int m) const {
        return coeffs_[static_cast<std::size_t>(m)];
    }

    double min_coeff() const;
    double min_coeff_squared() const {
        const double a = min_coeff();
        return a * a;
    }
    /// First index attaining the minimum; used only for reporting.
    int argmin() const;

    /// Indices with A_m ≤ kZeroAmplitude.
    std::vector<int> zero_indices() const;

    /// Throws LinearlyDependentError if any coefficient is zero.
    void require_linearly_independent() const;

   private:
    std::vector<double> coeffs_;
};

/// Random spectrum whose squared coefficients are drawn uniformly from
/// [floor, 1) and then normalized, so every coefficient stays nonzero.
SchmidtSpectrum random_spectrum(int d, RngStream &rng, double floor = 0.05);

/// The ν_l = Z^l Σ_k A_k|k⟩ states with their Gram matrix.
struct NuFamily {
    int d;
    std::vector<StateVector> states;
    CMatrix gram;
};

/// Two-qudit state Σ_m A_m|m⟩⊗|m⟩.
StateVector channel_state(const SchmidtSpectrum &s);

NuFamily nu_family(const SchmidtSpectrum &s);

/// ⟨ν_n|ν_m⟩ = Σ_k exp(2πi k(m−n)/d) A_k², evaluated without forming the states.
CMatrix gram_closed_form(const SchmidtSpectrum &s);

struct LinearIndependence {
    int rank;        // number of nonzero coefficients
    bool is_li;      // rank == d
    int gram_rank;   // eigenvalues of the Gram matrix above 1e-10
};

LinearIndependence li_rank(const SchmidtSpectrum &s);

/// Numerical rank of a Hermitian matrix: eigenvalues above `threshold`.
int hermitian_rank(const CMatrix &m, double threshold = 1e-10);

/// Weights of the channel split into a maximally entangled part and a
/// residual part on the remaining Schmidt directions.
struct ChannelDecomposition {
    double weight_success;             // d·A_min²
    std::vector<double> residual;      // √((A_n² − A_min²)/(1 − d·A_min²)); empty if degenerate
    bool degenerate;                   // A_min² = 1/d: the residual part vanishes
};

ChannelDecomposition decompose_channel(const SchmidtSpectrum &s);

}  // namespace qtele

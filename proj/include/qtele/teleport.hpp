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

#include <optional>
#include <string_view>
#include <vector>

#include "qtele/channel.hpp"
#include "qtele/discrimination.hpp"
#include "qtele/qudit.hpp"
#include "qtele/rng.hpp"

namespace qtele {

/// Register layout of the protocol: particle 1 (receiver), 2 and 3 (sender).
inline constexpr int kReceiver = 0;
inline constexpr int kSenderChannel = 1;
inline constexpr int kSenderInput = 2;

/// What the receiver does after an inconclusive discrimination outcome.
/// Conclusive outcomes are always corrected with X^{d−k} Z^l.
enum class CorrectionStrategy {
    NoCorrection,
    XOnly,
    XAndZ,
};

std::string_view strategy_name(CorrectionStrategy strategy);
/// Accepts "none", "x", "xz" (and the enum spellings).
std::optional<CorrectionStrategy> parse_strategy(std::string_view name);

inline constexpr CorrectionStrategy kAllStrategies[] = {
    CorrectionStrategy::NoCorrection,
    CorrectionStrategy::XOnly,
    CorrectionStrategy::XAndZ,
};

enum class BranchType {
    Conclusive,
    Inconclusive,
};

struct ProtocolRun {
    StateVector input;
    BranchType branch;
    int l_or_s;  // l for conclusive outcomes, s = outcome − d for inconclusive ones
    int k;       // particle-3 outcome
    double probability;
    /// Receiver's corrected, normalized state; empty for zero-probability branches.
    std::optional<StateVector> output;
    double fidelity;
};

/// Protocol with the maximally entangled channel: GXOR₂₃, particle 2
/// measured in the Fourier basis, particle 3 computationally.
ProtocolRun run_standard(int d, const StateVector &psi, RngStream &rng);

/// Every branch of the standard protocol (d² of them).
std::vector<ProtocolRun> enumerate_standard(int d, const StateVector &psi);

/// Conclusive teleportation through a non-maximally entangled channel.
/// Builds the discrimination plan once; reuse it across inputs.
class ConclusiveProtocol {
   public:
    explicit ConclusiveProtocol(const SchmidtSpectrum &spectrum, const CompletionOrder &order = {});

    const SchmidtSpectrum &spectrum() const noexcept {
        return spectrum_;
    }
    const DiscriminationPlan &plan() const noexcept {
        return plan_;
    }
    int d() const noexcept {
        return spectrum_.d();
    }

    /// Joint state after GXOR₂₃ on channel ⊗ ψ (dims d, d, d).
    StateVector after_gxor(const StateVector &psi) const;
    /// Joint state after embedding particle 2 and applying U (dims d, 2d, d).
    StateVector after_discrimination(const StateVector &psi) const;

    /// Sampled run: particle 2 measured first, then particle 3.
    ProtocolRun run(const StateVector &psi, CorrectionStrategy strategy, RngStream &rng) const;

    /// All 2d·d branches in outcome order (particle-2 outcome major).
    std::vector<ProtocolRun> enumerate(const StateVector &psi, CorrectionStrategy strategy) const;

    /// Receiver's vector before correction for outcome (o2, k), unnormalized.
    CVector pre_correction(const StateVector &discriminated, int o2, int k) const;

    /// Correction applied by the receiver for outcome (o2, k).
    CMatrix correction(int o2, int k, CorrectionStrategy strategy) const;

   private:
    ProtocolRun finish(const StateVector &psi, int o2, int k, CVector branch, CorrectionStrategy strategy) const;

    SchmidtSpectrum spectrum_;
    DiscriminationPlan plan_;
    CMatrix gxor_;
    std::vector<CMatrix> x_powers_;
    std::vector<CMatrix> z_powers_;
};

ProtocolRun run_conclusive(const SchmidtSpectrum &s, const StateVector &psi, CorrectionStrategy strategy,
                           RngStream &rng);

std::vector<ProtocolRun> enumerate_runs(const SchmidtSpectrum &s, const StateVector &psi,
                                        CorrectionStrategy strategy);

/// Comparison of simulated pre-correction branch states with the closed
/// forms for conclusive and inconclusive outcomes.
struct ConditionalStateReport {
    double max_conclusive_deviation;    // vs Z^{d−l} X^k ψ
    double max_inconclusive_deviation;  // vs Σ_l A_s^l Z^{d−l} X^k ψ
    double max_x_corrected_deviation;   // X^{d−k} branch vs Σ_l A_s^l e^{−2πi lk/d} Z^{d−l} ψ
    /// Simulated unnormalized amplitude divided by the nominal prefactors
    /// 1/d (conclusive) and 1/(d√d) (inconclusive). Conclusive branches come
    /// out at √S_max rather than 1.
    double conclusive_prefactor_ratio;
    double inconclusive_prefactor_ratio;
    double max_deviation() const;
    bool passed(double tolerance = 1e-9) const {
        return max_deviation() <= tolerance;
    }
};

ConditionalStateReport conditional_state_check(const SchmidtSpectrum &s, const StateVector &psi);

/// Distance between the state after GXOR, U and a Fourier transform on the
/// inconclusive block, and (1/d) Σ_{l,k} Z^{d−l}X^kψ ⊗ (√S|e_l⟩ + √(1−S)|ν̃_l⟩) ⊗ |k⟩
/// with ν̃_l the residual-channel states.
double two_channel_identity_deviation(const SchmidtSpectrum &s, const StateVector &psi);

}  // namespace qtele

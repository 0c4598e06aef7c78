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

#include <cstdint>
#include <span>
#include <vector>

#include "qtele/channel.hpp"
#include "qtele/rng.hpp"
#include "qtele/teleport.hpp"

namespace qtele {

// Closed-form average fidelities.

/// 1/d + (d−1)·A_min²: receiver does nothing after an inconclusive outcome.
double f0(const SchmidtSpectrum &s);
/// (2 + d(d−1)·A_min²)/(d+1): receiver applies X^{d−k}.
double f1(const SchmidtSpectrum &s);
/// f1 + (1/(d+1)) Σ_{n≠r} √(A_n²−A_min²)·√(A_r²−A_min²): X^{d−k} then Z^s.
double f2(const SchmidtSpectrum &s);

double analytic_fidelity(const SchmidtSpectrum &s, CorrectionStrategy strategy);

enum class BanaszekVariant {
    Corrected,  // (1 + (Σ t_k)²)/(d+1)
    AsWritten,  // (1 − (Σ t_k)²)/(d+1); sign-flipped form, negative for the maximal channel
};

/// Maximal average teleportation fidelity through Σ_k t_k|k⟩|k⟩.
/// `dimension` defaults to the number of coefficients.
double banaszek_bound(std::span<const double> t, BanaszekVariant variant, int dimension = 0);

/// Unnormalized linear map from ψ to the receiver's corrected state in one
/// measurement branch, read off the simulated protocol.
struct BranchOperator {
    BranchType branch;
    int l_or_s;
    int k;
    CMatrix op;
};

std::vector<BranchOperator> branch_operators(const ConclusiveProtocol &protocol, CorrectionStrategy strategy);

struct ExactAverage {
    double total;
    double conclusive;    // contribution of conclusive branches
    double inconclusive;  // contribution of inconclusive branches
};

/// Haar average of Σ_branches |⟨ψ|K ψ⟩|² via the second-moment identity
/// ∫dψ |⟨ψ|K|ψ⟩|² = (|tr K|² + tr K†K)/(d(d+1)).
ExactAverage exact_average_breakdown(const SchmidtSpectrum &s, CorrectionStrategy strategy);
double exact_average(const SchmidtSpectrum &s, CorrectionStrategy strategy);

struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t trials;
};

/// Monte Carlo average fidelity. Each trial draws a Haar input from its own
/// child stream of `rng` and takes the exact expectation over measurement
/// branches. Results do not depend on `threads`.
McEstimate mc_average(const SchmidtSpectrum &s, CorrectionStrategy strategy, std::uint64_t trials,
                      const RngStream &rng, int threads = 1);

struct HaarMoment {
    double estimate;
    double std_error;
    double expected;  // (1 + δ_ab)/(d(d+1))
};

HaarMoment haar_moment_check(int d, int a, int b, std::uint64_t trials, const RngStream &rng);

struct FidelityReport {
    SchmidtSpectrum spectrum;
    CorrectionStrategy strategy;
    double analytic;
    double exact;
    double mc_mean;
    double mc_stderr;
    std::uint64_t trials;
    double banaszek_corrected;
    double banaszek_as_written;
};

/// Full comparison for one configuration. `trials == 0` skips Monte Carlo
/// (mc fields are then NaN).
FidelityReport fidelity_report(const SchmidtSpectrum &s, CorrectionStrategy strategy, std::uint64_t trials,
                               const RngStream &rng, int threads = 1);

/// Running sum with Neumaier compensation.
class CompensatedSum {
   public:
    void add(double x);
    double value() const {
        return sum_ + compensation_;
    }

   private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace qtele

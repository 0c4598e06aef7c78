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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtele/rng.hpp"

namespace qtele {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Amplitudes of a pure state over a register of qudits. The composite
/// index is row-major over `dims`: subsystem 0 is the most significant digit.
class StateVector {
   public:
    StateVector(std::vector<int> dims, CVector amps);

    /// Computational basis state |digits[0], digits[1], ...⟩.
    static StateVector basis(std::vector<int> dims, std::span<const int> digits);

    /// Single-qudit state built from raw amplitudes, normalized.
    static StateVector normalized(CVector amps);

    const std::vector<int> &dims() const noexcept {
        return dims_;
    }
    const CVector &amps() const noexcept {
        return amps_;
    }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    Complex operator[](std::size_t i) const {
        return amps_[static_cast<Eigen::Index>(i)];
    }
    double norm_squared() const {
        return amps_.squaredNorm();
    }

    /// Kronecker product, `*this` occupying the leading subsystems.
    StateVector tensor(const StateVector &other) const;

    /// ⟨this|other⟩.
    Complex inner(const StateVector &other) const;

   private:
    std::vector<int> dims_;
    CVector amps_;
};

/// Square complex matrix acting on one or more qudits.
class DenseOperator {
   public:
    explicit DenseOperator(CMatrix entries);

    static DenseOperator identity(int dim);

    int dim() const noexcept {
        return static_cast<int>(entries_.rows());
    }
    const CMatrix &matrix() const noexcept {
        return entries_;
    }
    Complex operator()(int row, int col) const {
        return entries_(row, col);
    }

    DenseOperator operator*(const DenseOperator &rhs) const;
    DenseOperator adjoint() const;
    DenseOperator pow(int exponent) const;
    DenseOperator kron(const DenseOperator &rhs) const;

    /// max |(U†U − I)_{ij}|.
    double unitarity_residual() const;

   private:
    CMatrix entries_;
};

/// Shift operator X|n⟩ = |n+1 mod d⟩.
DenseOperator shift_x(int d);
/// Clock operator Z|n⟩ = exp(2πi n/d)|n⟩.
DenseOperator clock_z(int d);
/// ⟨k|F|l⟩ = exp(2πi lk/d)/√d.
DenseOperator fourier(int d);
/// Two-qudit gate |i,j⟩ → |i, i−j mod d⟩.
DenseOperator gxor(int d);

/// Generalized Bell state (1/√d) Σ_j exp(2πi jn/d) |j⟩⊗|j+m mod d⟩.
StateVector bell_state(int n, int m, int d);

/// Applies `op` to the listed subsystems (in the listed order) and the
/// identity elsewhere.
StateVector apply(const DenseOperator &op, const StateVector &state, std::span<const int> targets);
StateVector apply(const DenseOperator &op, const StateVector &state, int target);

/// Zero-pads subsystem `target` from its current dimension up to `new_dim`;
/// old basis states keep their indices.
StateVector embed_subsystem(const StateVector &state, int target, int new_dim);

/// Contracts subsystem `target` with ⟨bra|, returning the unnormalized vector
/// over the remaining subsystems.
StateVector project_out(const StateVector &state, int target, const CVector &bra_ket);

struct MeasurementRecord {
    int outcome;
    double probability;
    StateVector post_state;
};

/// Measurement basis: either the computational basis or the columns of a
/// unitary.
using MeasurementBasis = std::optional<DenseOperator>;

/// Samples a projective measurement on `target` by inverse CDF over the
/// branch probabilities in outcome order.
MeasurementRecord measure(const StateVector &state, int target, const MeasurementBasis &basis, RngStream &rng);

/// Every outcome of the measurement with its probability and renormalized
/// post-measurement state. Zero-probability branches are kept with a zero
/// post_state.
std::vector<MeasurementRecord> enumerate_branches(const StateVector &state, int target,
                                                  const MeasurementBasis &basis);

/// Haar-random pure state of one qudit (normalized complex Gaussian vector).
StateVector haar_state(int d, RngStream &rng);

/// min over global phase θ of ‖a − e^{iθ} b‖.
double phase_insensitive_distance(const CVector &a, const CVector &b);

}  // namespace qtele

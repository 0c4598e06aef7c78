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

#include "qtele/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qtele/errors.hpp"

namespace qtele {

namespace {

void require_dimension(int d) {
    if (d < 2) {
        throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2, got " + std::to_string(d));
    }
}

std::size_t product(const std::vector<int> &dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           [](std::size_t acc, int v) { return acc * static_cast<std::size_t>(v); });
}

std::vector<std::size_t> strides_of(const std::vector<int> &dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * static_cast<std::size_t>(dims[i]);
    }
    return strides;
}

Complex root_of_unity(long long numerator, int d) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator % d) / d;
    return std::polar(1.0, angle);
}

void check_targets(const std::vector<int> &dims, std::span<const int> targets) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= static_cast<int>(dims.size())) {
            throw Error(ErrorKind::ShapeError, "target subsystem " + std::to_string(targets[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw Error(ErrorKind::ShapeError, "target subsystems must be distinct");
            }
        }
    }
}

CVector basis_ket(const MeasurementBasis &basis, int dim, int outcome) {
    if (basis) {
        return basis->matrix().col(outcome);
    }
    CVector ket = CVector::Zero(dim);
    ket[outcome] = 1.0;
    return ket;
}

void check_basis(const StateVector &state, int target, const MeasurementBasis &basis) {
    check_targets(state.dims(), std::span<const int>(&target, 1));
    if (!basis) {
        return;
    }
    if (basis->dim() != state.dims()[static_cast<std::size_t>(target)]) {
        throw Error(ErrorKind::ShapeError, "measurement basis dimension does not match subsystem");
    }
    if (basis->unitarity_residual() > 1e-10) {
        throw Error(ErrorKind::ShapeError, "measurement basis is not unitary");
    }
}

// Branch probabilities of a measurement, normalized by the input norm.
std::vector<StateVector> projected_branches(const StateVector &state, int target, const MeasurementBasis &basis,
                                            double &input_norm2) {
    input_norm2 = state.norm_squared();
    if (!(input_norm2 > 1e-300)) {
        throw Error(ErrorKind::InvalidState, "cannot measure a zero-norm state");
    }
    const int dim = state.dims()[static_cast<std::size_t>(target)];
    std::vector<StateVector> branches;
    branches.reserve(static_cast<std::size_t>(dim));
    for (int o = 0; o < dim; ++o) {
        CVector ket = basis_ket(basis, dim, o);
        CMatrix projector = ket * ket.adjoint();
        branches.push_back(apply(DenseOperator(std::move(projector)), state, target));
    }
    return branches;
}

StateVector renormalized(const StateVector &branch, double norm2) {
    if (norm2 > 0.0) {
        return StateVector(branch.dims(), branch.amps() / std::sqrt(norm2));
    }
    return StateVector(branch.dims(), CVector::Zero(static_cast<Eigen::Index>(branch.size())));
}

}  // namespace

StateVector::StateVector(std::vector<int> dims, CVector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (dims_.empty()) {
        throw Error(ErrorKind::ShapeError, "state needs at least one subsystem");
    }
    for (int d : dims_) {
        require_dimension(d);
    }
    if (product(dims_) != static_cast<std::size_t>(amps_.size())) {
        throw Error(ErrorKind::ShapeError, "amplitude count does not match product of dims");
    }
}

StateVector StateVector::basis(std::vector<int> dims, std::span<const int> digits) {
    if (digits.size() != dims.size()) {
        throw Error(ErrorKind::ShapeError, "basis digits do not match register");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= dims[i]) {
            throw Error(ErrorKind::InvalidIndex, "basis digit out of range");
        }
        index = index * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(digits[i]);
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(product(dims)));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

StateVector StateVector::normalized(CVector amps) {
    const double n = amps.norm();
    if (!(n > 0.0)) {
        throw Error(ErrorKind::InvalidState, "cannot normalize a zero vector");
    }
    const int d = static_cast<int>(amps.size());
    return StateVector({d}, amps / n);
}

StateVector StateVector::tensor(const StateVector &other) const {
    std::vector<int> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    CVector amps(amps_.size() * other.amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        amps.segment(i * other.amps_.size(), other.amps_.size()) = amps_[i] * other.amps_;
    }
    return StateVector(std::move(dims), std::move(amps));
}

Complex StateVector::inner(const StateVector &other) const {
    if (dims_ != other.dims_) {
        throw Error(ErrorKind::ShapeError, "inner product of states on different registers");
    }
    return amps_.dot(other.amps_);
}

DenseOperator::DenseOperator(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw Error(ErrorKind::ShapeError, "operator must be a non-empty square matrix");
    }
}

DenseOperator DenseOperator::identity(int dim) {
    return DenseOperator(CMatrix::Identity(dim, dim));
}

DenseOperator DenseOperator::operator*(const DenseOperator &rhs) const {
    if (dim() != rhs.dim()) {
        throw Error(ErrorKind::ShapeError, "operator product dimension mismatch");
    }
    return DenseOperator(entries_ * rhs.entries_);
}

DenseOperator DenseOperator::adjoint() const {
    return DenseOperator(entries_.adjoint());
}

DenseOperator DenseOperator::pow(int exponent) const {
    if (exponent < 0) {
        throw Error(ErrorKind::InvalidIndex, "negative operator power");
    }
    CMatrix result = CMatrix::Identity(dim(), dim());
    for (int i = 0; i < exponent; ++i) {
        result = result * entries_;
    }
    return DenseOperator(std::move(result));
}

DenseOperator DenseOperator::kron(const DenseOperator &rhs) const {
    const Eigen::Index n = entries_.rows();
    const Eigen::Index m = rhs.entries_.rows();
    CMatrix out(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.block(i * m, j * m, m, m) = entries_(i, j) * rhs.entries_;
        }
    }
    return DenseOperator(std::move(out));
}

double DenseOperator::unitarity_residual() const {
    CMatrix r = entries_.adjoint() * entries_ - CMatrix::Identity(dim(), dim());
    return r.cwiseAbs().maxCoeff();
}

DenseOperator shift_x(int d) {
    require_dimension(d);
    CMatrix m = CMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        m((n + 1) % d, n) = 1.0;
    }
    return DenseOperator(std::move(m));
}

DenseOperator clock_z(int d) {
    require_dimension(d);
    CMatrix m = CMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        m(n, n) = root_of_unity(n, d);
    }
    return DenseOperator(std::move(m));
}

DenseOperator fourier(int d) {
    require_dimension(d);
    CMatrix m(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            m(k, l) = scale * root_of_unity(static_cast<long long>(l) * k, d);
        }
    }
    return DenseOperator(std::move(m));
}

DenseOperator gxor(int d) {
    require_dimension(d);
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i * d + ((i - j) % d + d) % d, i * d + j) = 1.0;
        }
    }
    return DenseOperator(std::move(m));
}

StateVector bell_state(int n, int m, int d) {
    require_dimension(d);
    if (n < 0 || n >= d || m < 0 || m >= d) {
        throw Error(ErrorKind::InvalidIndex, "Bell indices must lie in [0, d)");
    }
    CVector amps = CVector::Zero(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        amps[j * d + (j + m) % d] = scale * root_of_unity(static_cast<long long>(j) * n, d);
    }
    return StateVector({d, d}, std::move(amps));
}

StateVector apply(const DenseOperator &op, const StateVector &state, std::span<const int> targets) {
    const auto &dims = state.dims();
    check_targets(dims, targets);
    const auto strides = strides_of(dims);

    std::size_t local = 1;
    for (int t : targets) {
        local *= static_cast<std::size_t>(dims[static_cast<std::size_t>(t)]);
    }
    if (static_cast<std::size_t>(op.dim()) != local) {
        throw Error(ErrorKind::ShapeError, "operator dimension " + std::to_string(op.dim()) +
                                               " does not match target dimension " + std::to_string(local));
    }

    // Composite-index offset of every local basis state of the targets.
    std::vector<std::size_t> offsets(local, 0);
    for (std::size_t t = 0; t < local; ++t) {
        std::size_t rem = t;
        std::size_t off = 0;
        for (std::size_t j = targets.size(); j-- > 0;) {
            const auto sub = static_cast<std::size_t>(targets[j]);
            const auto dj = static_cast<std::size_t>(dims[sub]);
            off += (rem % dj) * strides[sub];
            rem /= dj;
        }
        offsets[t] = off;
    }

    const CVector &in = state.amps();
    CVector out(in.size());
    CVector gathered(static_cast<Eigen::Index>(local));
    const std::size_t total = state.size();
    for (std::size_t base = 0; base < total; ++base) {
        bool is_base = true;
        for (int t : targets) {
            const auto sub = static_cast<std::size_t>(t);
            if ((base / strides[sub]) % static_cast<std::size_t>(dims[sub]) != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) {
            continue;
        }
        for (std::size_t t = 0; t < local; ++t) {
            gathered[static_cast<Eigen::Index>(t)] = in[static_cast<Eigen::Index>(base + offsets[t])];
        }
        CVector result = op.matrix() * gathered;
        for (std::size_t t = 0; t < local; ++t) {
            out[static_cast<Eigen::Index>(base + offsets[t])] = result[static_cast<Eigen::Index>(t)];
        }
    }
    return StateVector(dims, std::move(out));
}

StateVector apply(const DenseOperator &op, const StateVector &state, int target) {
    return apply(op, state, std::span<const int>(&target, 1));
}

StateVector embed_subsystem(const StateVector &state, int target, int new_dim) {
    check_targets(state.dims(), std::span<const int>(&target, 1));
    const auto sub = static_cast<std::size_t>(target);
    const int old_dim = state.dims()[sub];
    if (new_dim < old_dim) {
        throw Error(ErrorKind::ShapeError, "embedding must not shrink a subsystem");
    }
    std::vector<int> dims = state.dims();
    dims[sub] = new_dim;
    const auto old_strides = strides_of(state.dims());
    const auto new_strides = strides_of(dims);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(product(dims)));
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::size_t rem = i;
        std::size_t j = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            const std::size_t digit = rem / old_strides[s];
            rem %= old_strides[s];
            j += digit * new_strides[s];
        }
        amps[static_cast<Eigen::Index>(j)] = state[i];
    }
    return StateVector(std::move(dims), std::move(amps));
}

StateVector project_out(const StateVector &state, int target, const CVector &bra_ket) {
    check_targets(state.dims(), std::span<const int>(&target, 1));
    if (state.dims().size() < 2) {
        throw Error(ErrorKind::ShapeError, "cannot project out the only subsystem");
    }
    const auto sub = static_cast<std::size_t>(target);
    const int dim = state.dims()[sub];
    if (bra_ket.size() != dim) {
        throw Error(ErrorKind::ShapeError, "projection vector does not match subsystem");
    }
    const auto strides = strides_of(state.dims());
    std::vector<int> dims = state.dims();
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(sub));
    const std::size_t outer = state.size() / (strides[sub] * static_cast<std::size_t>(dim));
    const std::size_t inner = strides[sub];
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(outer * inner));
    for (std::size_t o = 0; o < outer; ++o) {
        for (int k = 0; k < dim; ++k) {
            const Complex c = std::conj(bra_ket[k]);
            if (c == Complex{}) {
                continue;
            }
            const std::size_t src = o * inner * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k) * inner;
            for (std::size_t i = 0; i < inner; ++i) {
                amps[static_cast<Eigen::Index>(o * inner + i)] += c * state[src + i];
            }
        }
    }
    return StateVector(std::move(dims), std::move(amps));
}

std::vector<MeasurementRecord> enumerate_branches(const StateVector &state, int target,
                                                  const MeasurementBasis &basis) {
    check_basis(state, target, basis);
    double input_norm2 = 0.0;
    auto branches = projected_branches(state, target, basis, input_norm2);
    std::vector<MeasurementRecord> records;
    records.reserve(branches.size());
    for (std::size_t o = 0; o < branches.size(); ++o) {
        const double n2 = branches[o].norm_squared();
        records.push_back({static_cast<int>(o), n2 / input_norm2, renormalized(branches[o], n2)});
    }
    return records;
}

MeasurementRecord measure(const StateVector &state, int target, const MeasurementBasis &basis, RngStream &rng) {
    check_basis(state, target, basis);
    double input_norm2 = 0.0;
    auto branches = projected_branches(state, target, basis, input_norm2);
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t chosen = branches.size();
    std::size_t last_nonzero = 0;
    for (std::size_t o = 0; o < branches.size(); ++o) {
        const double p = branches[o].norm_squared() / input_norm2;
        if (p > 0.0) {
            last_nonzero = o;
        }
        cumulative += p;
        if (chosen == branches.size() && p > 0.0 && u < cumulative) {
            chosen = o;
        }
    }
    if (chosen == branches.size()) {
        // u landed in the rounding gap above the final cumulative sum.
        chosen = last_nonzero;
    }
    const double n2 = branches[chosen].norm_squared();
    return {static_cast<int>(chosen), n2 / input_norm2, renormalized(branches[chosen], n2)};
}

StateVector haar_state(int d, RngStream &rng) {
    require_dimension(d);
    CVector amps(d);
    for (int i = 0; i < d; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        amps[i] = Complex(re, im);
    }
    return StateVector::normalized(std::move(amps));
}

double phase_insensitive_distance(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::ShapeError, "vectors of different length");
    }
    const Complex overlap = b.dot(a);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    return (a - phase * b).norm();
}

}  // namespace qtele

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

#include "qtele/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtele/errors.hpp"

namespace qtele {

namespace {

// Branches whose squared norm is below this carry no output state.
constexpr double kNullBranch = 1e-30;

void require_input(const StateVector &psi, int d) {
    if (psi.dims().size() != 1 || psi.dims()[0] != d) {
        throw Error(ErrorKind::ShapeError, "input state must be a single qudit of dimension " + std::to_string(d));
    }
    if (!(psi.norm_squared() > 0.0)) {
        throw Error(ErrorKind::InvalidState, "input state has zero norm");
    }
}

CVector unit(int dim, int index) {
    CVector v = CVector::Zero(dim);
    v[index] = 1.0;
    return v;
}

std::vector<CMatrix> powers_of(const DenseOperator &op) {
    std::vector<CMatrix> out;
    const int d = op.dim();
    out.reserve(static_cast<std::size_t>(d));
    CMatrix current = CMatrix::Identity(d, d);
    for (int i = 0; i < d; ++i) {
        out.push_back(current);
        current = op.matrix() * current;
    }
    return out;
}

ProtocolRun finish_run(const StateVector &psi, BranchType type, int label, int k, const CVector &branch,
                       const CMatrix &correction) {
    const double probability = branch.squaredNorm() / psi.norm_squared();
    ProtocolRun run{psi, type, label, k, probability, std::nullopt, 0.0};
    if (branch.squaredNorm() > kNullBranch) {
        const CVector corrected = correction * branch;
        run.output = StateVector::normalized(corrected);
        run.fidelity = std::norm(psi.amps().normalized().dot(run.output->amps()));
    }
    return run;
}

StateVector standard_after_gxor(int d, const StateVector &psi) {
    require_input(psi, d);
    const int pair[] = {kSenderChannel, kSenderInput};
    return apply(gxor(d), bell_state(0, 0, d).tensor(psi), pair);
}

CVector standard_receiver(const StateVector &state, const DenseOperator &f, int l, int k) {
    const int d = f.dim();
    const StateVector after2 = project_out(state, kSenderChannel, f.matrix().col(l));
    return project_out(after2, 1, unit(d, k)).amps();
}

CMatrix standard_correction(int d, int l, int k) {
    return (shift_x(d).pow((d - k) % d) * clock_z(d).pow(l)).matrix();
}

// A_s^l = Σ_m exp(2πi m(l−s)/d) √(A_m² − A_min²).
Complex inconclusive_amplitude(const SchmidtSpectrum &s, int sidx, int l) {
    const int d = s.d();
    const double amin2 = s.min_coeff_squared();
    Complex acc{};
    for (int m = 0; m < d; ++m) {
        const int phase = ((m * (l - sidx)) % d + d) % d;
        acc += std::polar(std::sqrt(s[m] * s[m] - amin2), 2.0 * std::numbers::pi * phase / d);
    }
    return acc;
}

}  // namespace

std::string_view strategy_name(CorrectionStrategy strategy) {
    switch (strategy) {
        case CorrectionStrategy::NoCorrection:
            return "none";
        case CorrectionStrategy::XOnly:
            return "x";
        case CorrectionStrategy::XAndZ:
            return "xz";
    }
    return "unknown";
}

std::optional<CorrectionStrategy> parse_strategy(std::string_view name) {
    if (name == "none" || name == "NoCorrection") {
        return CorrectionStrategy::NoCorrection;
    }
    if (name == "x" || name == "XOnly") {
        return CorrectionStrategy::XOnly;
    }
    if (name == "xz" || name == "XAndZ") {
        return CorrectionStrategy::XAndZ;
    }
    return std::nullopt;
}

ProtocolRun run_standard(int d, const StateVector &psi, RngStream &rng) {
    const StateVector state = standard_after_gxor(d, psi);
    const DenseOperator f = fourier(d);
    const auto rec2 = measure(state, kSenderChannel, f, rng);
    const auto rec3 = measure(rec2.post_state, kSenderInput, std::nullopt, rng);
    const int l = rec2.outcome;
    const int k = rec3.outcome;
    return finish_run(psi, BranchType::Conclusive, l, k, standard_receiver(state, f, l, k),
                      standard_correction(d, l, k));
}

std::vector<ProtocolRun> enumerate_standard(int d, const StateVector &psi) {
    const StateVector state = standard_after_gxor(d, psi);
    const DenseOperator f = fourier(d);
    std::vector<ProtocolRun> runs;
    runs.reserve(static_cast<std::size_t>(d * d));
    for (int l = 0; l < d; ++l) {
        for (int k = 0; k < d; ++k) {
            runs.push_back(finish_run(psi, BranchType::Conclusive, l, k, standard_receiver(state, f, l, k),
                                      standard_correction(d, l, k)));
        }
    }
    return runs;
}

ConclusiveProtocol::ConclusiveProtocol(const SchmidtSpectrum &spectrum, const CompletionOrder &order)
    : spectrum_(spectrum),
      plan_(build_unitary(spectrum, order)),
      gxor_(gxor(spectrum.d()).matrix()),
      x_powers_(powers_of(shift_x(spectrum.d()))),
      z_powers_(powers_of(clock_z(spectrum.d()))) {
}

StateVector ConclusiveProtocol::after_gxor(const StateVector &psi) const {
    require_input(psi, d());
    const int pair[] = {kSenderChannel, kSenderInput};
    return apply(DenseOperator(gxor_), channel_state(spectrum_).tensor(psi), pair);
}

StateVector ConclusiveProtocol::after_discrimination(const StateVector &psi) const {
    const StateVector embedded = embed_subsystem(after_gxor(psi), kSenderChannel, 2 * d());
    return apply(plan_.unitary, embedded, kSenderChannel);
}

CVector ConclusiveProtocol::pre_correction(const StateVector &discriminated, int o2, int k) const {
    const StateVector after2 = project_out(discriminated, kSenderChannel, unit(2 * d(), o2));
    return project_out(after2, 1, unit(d(), k)).amps();
}

CMatrix ConclusiveProtocol::correction(int o2, int k, CorrectionStrategy strategy) const {
    const int dd = d();
    const CMatrix &x_inverse_k = x_powers_[static_cast<std::size_t>((dd - k) % dd)];
    if (o2 < dd) {
        return x_inverse_k * z_powers_[static_cast<std::size_t>(o2)];
    }
    const int s = o2 - dd;
    switch (strategy) {
        case CorrectionStrategy::NoCorrection:
            return CMatrix::Identity(dd, dd);
        case CorrectionStrategy::XOnly:
            return x_inverse_k;
        case CorrectionStrategy::XAndZ:
            return z_powers_[static_cast<std::size_t>(s)] * x_inverse_k;
    }
    return CMatrix::Identity(dd, dd);
}

ProtocolRun ConclusiveProtocol::finish(const StateVector &psi, int o2, int k, CVector branch,
                                       CorrectionStrategy strategy) const {
    const bool conclusive = o2 < d();
    return finish_run(psi, conclusive ? BranchType::Conclusive : BranchType::Inconclusive,
                      conclusive ? o2 : o2 - d(), k, branch, correction(o2, k, strategy));
}

ProtocolRun ConclusiveProtocol::run(const StateVector &psi, CorrectionStrategy strategy, RngStream &rng) const {
    const StateVector state = after_discrimination(psi);
    const auto rec2 = measure(state, kSenderChannel, std::nullopt, rng);
    const auto rec3 = measure(rec2.post_state, kSenderInput, std::nullopt, rng);
    return finish(psi, rec2.outcome, rec3.outcome, pre_correction(state, rec2.outcome, rec3.outcome), strategy);
}

std::vector<ProtocolRun> ConclusiveProtocol::enumerate(const StateVector &psi, CorrectionStrategy strategy) const {
    const StateVector state = after_discrimination(psi);
    std::vector<ProtocolRun> runs;
    runs.reserve(static_cast<std::size_t>(2 * d() * d()));
    for (int o2 = 0; o2 < 2 * d(); ++o2) {
        for (int k = 0; k < d(); ++k) {
            runs.push_back(finish(psi, o2, k, pre_correction(state, o2, k), strategy));
        }
    }
    return runs;
}

ProtocolRun run_conclusive(const SchmidtSpectrum &s, const StateVector &psi, CorrectionStrategy strategy,
                           RngStream &rng) {
    return ConclusiveProtocol(s).run(psi, strategy, rng);
}

std::vector<ProtocolRun> enumerate_runs(const SchmidtSpectrum &s, const StateVector &psi,
                                        CorrectionStrategy strategy) {
    return ConclusiveProtocol(s).enumerate(psi, strategy);
}

double ConditionalStateReport::max_deviation() const {
    return std::max({max_conclusive_deviation, max_inconclusive_deviation, max_x_corrected_deviation});
}

ConditionalStateReport conditional_state_check(const SchmidtSpectrum &s, const StateVector &psi) {
    const ConclusiveProtocol protocol(s);
    const int d = s.d();
    const StateVector state = protocol.after_discrimination(psi);
    const CMatrix x = shift_x(d).matrix();
    const CMatrix z = clock_z(d).matrix();
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    const double success = protocol.plan().success;

    auto z_pow = [&](int e) { return clock_z(d).pow(((e % d) + d) % d).matrix(); };
    auto x_pow = [&](int e) { return shift_x(d).pow(((e % d) + d) % d).matrix(); };

    ConditionalStateReport report{0.0, 0.0, 0.0, 0.0, 0.0};
    double conclusive_sim = 0.0, conclusive_nominal = 0.0;
    double inconclusive_sim = 0.0, inconclusive_nominal = 0.0;
    const CVector &psi_amps = psi.amps();

    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const CVector branch = protocol.pre_correction(state, l, k);
            const CVector nominal = (z_pow(d - l) * x_pow(k) * psi_amps) / d;
            report.max_conclusive_deviation = std::max(
                report.max_conclusive_deviation, phase_insensitive_distance(branch, std::sqrt(success) * nominal));
            conclusive_sim += branch.squaredNorm();
            conclusive_nominal += nominal.squaredNorm();
        }
        for (int sidx = 0; sidx < d; ++sidx) {
            const CVector branch = protocol.pre_correction(state, d + sidx, k);
            CMatrix op = CMatrix::Zero(d, d);
            CMatrix op_x_corrected = CMatrix::Zero(d, d);
            for (int l = 0; l < d; ++l) {
                const Complex a = inconclusive_amplitude(s, sidx, l);
                op += a * z_pow(d - l) * x_pow(k);
                op_x_corrected += a * std::polar(1.0, -2.0 * std::numbers::pi * ((l * k) % d) / d) * z_pow(d - l);
            }
            const CVector nominal = op * psi_amps / (d * sqrt_d);
            report.max_inconclusive_deviation =
                std::max(report.max_inconclusive_deviation, phase_insensitive_distance(branch, nominal));
            const CVector x_corrected = x_pow(d - k) * branch;
            report.max_x_corrected_deviation =
                std::max(report.max_x_corrected_deviation,
                         phase_insensitive_distance(x_corrected, op_x_corrected * psi_amps / (d * sqrt_d)));
            inconclusive_sim += branch.squaredNorm();
            inconclusive_nominal += nominal.squaredNorm();
        }
    }
    report.conclusive_prefactor_ratio = conclusive_nominal > 0 ? std::sqrt(conclusive_sim / conclusive_nominal) : 0.0;
    report.inconclusive_prefactor_ratio =
        inconclusive_nominal > 0 ? std::sqrt(inconclusive_sim / inconclusive_nominal) : 1.0;
    return report;
}

double two_channel_identity_deviation(const SchmidtSpectrum &s, const StateVector &psi) {
    const ConclusiveProtocol protocol(s);
    const int d = s.d();
    CMatrix block = CMatrix::Identity(2 * d, 2 * d);
    block.bottomRightCorner(d, d) = fourier(d).matrix();
    const StateVector actual = apply(DenseOperator(block), protocol.after_discrimination(psi), kSenderChannel);

    const auto split = decompose_channel(s);
    const double success = split.weight_success;
    CVector residual_amps = CVector::Zero(d);
    if (!split.degenerate) {
        for (int n = 0; n < d; ++n) {
            residual_amps[n] = std::sqrt(1.0 - success) * split.residual[static_cast<std::size_t>(n)];
        }
    }

    const DenseOperator x = shift_x(d);
    const DenseOperator z = clock_z(d);
    CVector expected = CVector::Zero(static_cast<Eigen::Index>(actual.size()));
    for (int l = 0; l < d; ++l) {
        CVector particle2 = CVector::Zero(2 * d);
        particle2[l] = std::sqrt(success);
        particle2.tail(d) = z.pow(l).matrix() * residual_amps;
        for (int k = 0; k < d; ++k) {
            const CVector receiver = z.pow((d - l) % d).matrix() * x.pow(k).matrix() * psi.amps();
            const StateVector term = StateVector({d}, receiver)
                                         .tensor(StateVector({2 * d}, particle2))
                                         .tensor(StateVector({d}, unit(d, k)));
            expected += term.amps() / d;
        }
    }
    return (actual.amps() - expected).cwiseAbs().maxCoeff();
}

}  // namespace qtele

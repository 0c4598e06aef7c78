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

#include "qtele/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qtele/errors.hpp"

namespace qtele {

namespace {

std::vector<double> residual_betas(const SchmidtSpectrum &s) {
    const double amin2 = s.min_coeff_squared();
    std::vector<double> beta;
    beta.reserve(static_cast<std::size_t>(s.d()));
    for (double a : s.coeffs()) {
        beta.push_back(std::sqrt(a * a - amin2));
    }
    return beta;
}

double second_moment(const CMatrix &k, int d) {
    return (std::norm(k.trace()) + k.squaredNorm()) / (d * (d + 1.0));
}

// Evaluates `trial(i)` for every i on `threads` workers with a static stride,
// so each value lands in its own slot regardless of scheduling.
template <typename Fn>
std::vector<double> run_trials(std::uint64_t trials, int threads, Fn trial) {
    std::vector<double> values(trials);
    const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
    auto work = [&](std::uint64_t w) {
        for (std::uint64_t i = w; i < trials; i += workers) {
            values[i] = trial(i);
        }
    };
    if (workers == 1) {
        work(0);
        return values;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back(work, w);
    }
    pool.clear();
    return values;
}

std::pair<double, double> mean_and_stderr(const std::vector<double> &values) {
    CompensatedSum sum;
    for (double v : values) {
        sum.add(v);
    }
    const auto n = static_cast<double>(values.size());
    const double mean = sum.value() / n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    CompensatedSum squares;
    for (double v : values) {
        squares.add((v - mean) * (v - mean));
    }
    return {mean, std::sqrt(squares.value() / (n - 1.0) / n)};
}

}  // namespace

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double f0(const SchmidtSpectrum &s) {
    s.require_linearly_independent();
    const int d = s.d();
    return 1.0 / d + (d - 1) * s.min_coeff_squared();
}

double f1(const SchmidtSpectrum &s) {
    s.require_linearly_independent();
    const int d = s.d();
    return (2.0 + d * (d - 1.0) * s.min_coeff_squared()) / (d + 1.0);
}

double f2(const SchmidtSpectrum &s) {
    const double base = f1(s);
    const int d = s.d();
    const auto beta = residual_betas(s);
    double cross = 0.0;
    for (int n = 0; n < d; ++n) {
        for (int r = 0; r < d; ++r) {
            if (n != r) {
                cross += beta[static_cast<std::size_t>(n)] * beta[static_cast<std::size_t>(r)];
            }
        }
    }
    return base + cross / (d + 1.0);
}

double analytic_fidelity(const SchmidtSpectrum &s, CorrectionStrategy strategy) {
    switch (strategy) {
        case CorrectionStrategy::NoCorrection:
            return f0(s);
        case CorrectionStrategy::XOnly:
            return f1(s);
        case CorrectionStrategy::XAndZ:
            return f2(s);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double banaszek_bound(std::span<const double> t, BanaszekVariant variant, int dimension) {
    if (t.empty()) {
        throw Error(ErrorKind::InvalidCoefficients, "no channel coefficients");
    }
    double norm2 = 0.0;
    double sum = 0.0;
    for (double v : t) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorKind::InvalidCoefficients, "channel coefficients must be finite and nonnegative");
        }
        norm2 += v * v;
        sum += v;
    }
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidCoefficients, "channel coefficients are not normalized");
    }
    const int d = dimension > 0 ? dimension : static_cast<int>(t.size());
    const double sign = variant == BanaszekVariant::Corrected ? 1.0 : -1.0;
    return (1.0 + sign * sum * sum) / (d + 1.0);
}

std::vector<BranchOperator> branch_operators(const ConclusiveProtocol &protocol, CorrectionStrategy strategy) {
    const int d = protocol.d();
    std::vector<BranchOperator> ops;
    ops.reserve(static_cast<std::size_t>(2 * d * d));
    for (int o2 = 0; o2 < 2 * d; ++o2) {
        for (int k = 0; k < d; ++k) {
            const bool conclusive = o2 < d;
            ops.push_back({conclusive ? BranchType::Conclusive : BranchType::Inconclusive, conclusive ? o2 : o2 - d, k,
                           CMatrix::Zero(d, d)});
        }
    }
    // The protocol is linear in ψ: column j of each branch map is the
    // branch output for input |j⟩.
    for (int j = 0; j < d; ++j) {
        const int digit[] = {j};
        const StateVector state = protocol.after_discrimination(StateVector::basis({d}, digit));
        for (auto &b : ops) {
            const int o2 = b.branch == BranchType::Conclusive ? b.l_or_s : b.l_or_s + d;
            b.op.col(j) = protocol.correction(o2, b.k, strategy) * protocol.pre_correction(state, o2, b.k);
        }
    }
    return ops;
}

ExactAverage exact_average_breakdown(const SchmidtSpectrum &s, CorrectionStrategy strategy) {
    s.require_linearly_independent();
    const ConclusiveProtocol protocol(s);
    const int d = s.d();
    CompensatedSum conclusive;
    CompensatedSum inconclusive;
    for (const auto &b : branch_operators(protocol, strategy)) {
        (b.branch == BranchType::Conclusive ? conclusive : inconclusive).add(second_moment(b.op, d));
    }
    return {conclusive.value() + inconclusive.value(), conclusive.value(), inconclusive.value()};
}

double exact_average(const SchmidtSpectrum &s, CorrectionStrategy strategy) {
    return exact_average_breakdown(s, strategy).total;
}

McEstimate mc_average(const SchmidtSpectrum &s, CorrectionStrategy strategy, std::uint64_t trials,
                      const RngStream &rng, int threads) {
    if (trials < 100) {
        throw Error(ErrorKind::InvalidArgument, "Monte Carlo needs at least 100 trials");
    }
    const ConclusiveProtocol protocol(s);
    const int d = s.d();
    const auto values = run_trials(trials, threads, [&](std::uint64_t i) {
        RngStream stream = rng.spawn(i);
        const StateVector psi = haar_state(d, stream);
        CompensatedSum acc;
        for (const auto &run : protocol.enumerate(psi, strategy)) {
            acc.add(run.probability * run.fidelity);
        }
        return acc.value();
    });
    const auto [mean, err] = mean_and_stderr(values);
    return {mean, err, trials};
}

HaarMoment haar_moment_check(int d, int a, int b, std::uint64_t trials, const RngStream &rng) {
    if (a < 0 || a >= d || b < 0 || b >= d) {
        throw Error(ErrorKind::InvalidIndex, "basis labels must lie in [0, d)");
    }
    if (trials < 2) {
        throw Error(ErrorKind::InvalidArgument, "need at least 2 trials");
    }
    const auto values = run_trials(trials, 1, [&](std::uint64_t i) {
        RngStream stream = rng.spawn(i);
        const StateVector psi = haar_state(d, stream);
        return std::norm(psi[static_cast<std::size_t>(a)]) * std::norm(psi[static_cast<std::size_t>(b)]);
    });
    const auto [mean, err] = mean_and_stderr(values);
    const double expected = (1.0 + (a == b ? 1.0 : 0.0)) / (d * (d + 1.0));
    return {mean, err, expected};
}

FidelityReport fidelity_report(const SchmidtSpectrum &s, CorrectionStrategy strategy, std::uint64_t trials,
                               const RngStream &rng, int threads) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    FidelityReport report{s,   strategy, analytic_fidelity(s, strategy), exact_average(s, strategy), nan, nan, trials,
                          0.0, 0.0};
    if (trials > 0) {
        const auto mc = mc_average(s, strategy, trials, rng, threads);
        report.mc_mean = mc.mean;
        report.mc_stderr = mc.std_error;
    }
    report.banaszek_corrected = banaszek_bound(s.coeffs(), BanaszekVariant::Corrected);
    report.banaszek_as_written = banaszek_bound(s.coeffs(), BanaszekVariant::AsWritten);
    return report;
}

}  // namespace qtele

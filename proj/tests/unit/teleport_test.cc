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

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

#include "qtele/errors.hpp"
#include "test_util.hpp"

using namespace qtele;
using qtele::testing::random_li_spectrum;

namespace {

SchmidtSpectrum qubit_example() {
    return SchmidtSpectrum({0.6, 0.8});
}

SchmidtSpectrum qutrit_example() {
    const double squares[] = {0.2, 0.3, 0.5};
    return SchmidtSpectrum::from_squares(squares);
}

double conclusive_mass(const std::vector<ProtocolRun> &runs) {
    double mass = 0.0;
    for (const auto &r : runs) {
        if (r.branch == BranchType::Conclusive) {
            mass += r.probability;
        }
    }
    return mass;
}

double total_probability(const std::vector<ProtocolRun> &runs) {
    return std::accumulate(runs.begin(), runs.end(), 0.0,
                           [](double acc, const ProtocolRun &r) { return acc + r.probability; });
}

}  // namespace

TEST(teleport, strategy_names_round_trip) {
    for (auto s : kAllStrategies) {
        EXPECT_EQ(parse_strategy(strategy_name(s)), s);
    }
    EXPECT_FALSE(parse_strategy("zx").has_value());
}

TEST(teleport, standard_protocol_qubit_zero) {
    const int zero[] = {0};
    const auto runs = enumerate_standard(2, StateVector::basis({2}, zero));
    ASSERT_EQ(runs.size(), 4u);
    for (const auto &r : runs) {
        EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
        EXPECT_NEAR(r.probability, 0.25, 1e-10);
    }
}

TEST(teleport, standard_protocol_is_perfect) {
    RngStream rng(12);
    for (int d = 2; d <= 6; ++d) {
        const StateVector psi = haar_state(d, rng);
        for (const auto &r : enumerate_standard(d, psi)) {
            EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
            EXPECT_NEAR(r.probability, 1.0 / (d * d), 1e-10);
        }
        for (int i = 0; i < 10; ++i) {
            EXPECT_NEAR(run_standard(d, psi, rng).fidelity, 1.0, 1e-10);
        }
    }
    EXPECT_THROW(run_standard(3, haar_state(2, rng), rng), Error);
}

TEST(teleport, maximal_channel_reduces_to_standard) {
    RngStream rng(13);
    for (int d = 2; d <= 5; ++d) {
        const auto s = SchmidtSpectrum::maximal(d);
        const StateVector psi = haar_state(d, rng);
        for (auto strategy : kAllStrategies) {
            const auto runs = enumerate_runs(s, psi, strategy);
            for (const auto &r : runs) {
                if (r.branch == BranchType::Conclusive) {
                    EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
                } else {
                    EXPECT_LT(r.probability, 1e-28);
                }
            }
            EXPECT_NEAR(conclusive_mass(runs), 1.0, 1e-10);
        }
    }
}

TEST(teleport, qubit_conclusive_mass) {
    RngStream rng(14);
    const auto runs = enumerate_runs(qubit_example(), haar_state(2, rng), CorrectionStrategy::XAndZ);
    EXPECT_EQ(runs.size(), 8u);
    EXPECT_NEAR(conclusive_mass(runs), 0.72, 1e-10);
}

// For A = (0.6, 0.8) the inconclusive map is ∝ |1⟩⟨1| X^k, so ψ = |1⟩ survives
// only with k = 0, each s carrying 0.28/2.
TEST(teleport, qubit_inconclusive_branches_for_basis_input) {
    const int one[] = {1};
    const StateVector psi = StateVector::basis({2}, one);
    const auto runs = enumerate_runs(qubit_example(), psi, CorrectionStrategy::NoCorrection);
    for (const auto &r : runs) {
        if (r.branch != BranchType::Inconclusive) {
            continue;
        }
        EXPECT_GE(r.fidelity, 0.0);
        EXPECT_LE(r.fidelity, 1.0 + 1e-12);
        if (r.k == 0) {
            EXPECT_NEAR(r.probability, 0.14, 1e-12);
            EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
        } else {
            EXPECT_LT(r.probability, 1e-28);
            EXPECT_FALSE(r.output.has_value());
        }
    }
}

TEST(teleport, qubit_inconclusive_operator_is_projector_times_shift) {
    const ConclusiveProtocol protocol(qubit_example());
    RngStream rng(15);
    const StateVector psi = haar_state(2, rng);
    const StateVector state = protocol.after_discrimination(psi);
    CMatrix p1 = CMatrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    for (int sidx = 0; sidx < 2; ++sidx) {
        for (int k = 0; k < 2; ++k) {
            const CVector branch = protocol.pre_correction(state, 2 + sidx, k);
            const CVector expected =
                std::sqrt(0.28) / (2 * std::sqrt(2.0)) * 2.0 * (p1 * shift_x(2).pow(k).matrix() * psi.amps());
            EXPECT_LT(phase_insensitive_distance(branch, expected), 1e-12);
        }
    }
}

TEST(teleport, enumeration_counts_and_qutrit_mass) {
    RngStream rng(16);
    const auto runs = enumerate_runs(qutrit_example(), haar_state(3, rng), CorrectionStrategy::XOnly);
    EXPECT_EQ(runs.size(), 18u);
    EXPECT_NEAR(conclusive_mass(runs), 0.6, 1e-10);
}

TEST(teleport, global_normalization_and_conclusive_perfection) {
    std::mt19937_64 gen(17);
    RngStream rng(17);
    for (int d = 2; d <= 6; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = random_li_spectrum(d, gen);
            const ConclusiveProtocol protocol(s);
            for (int i = 0; i < 5; ++i) {
                const StateVector psi = haar_state(d, rng);
                const auto runs = protocol.enumerate(psi, kAllStrategies[static_cast<std::size_t>(i % 3)]);
                EXPECT_NEAR(total_probability(runs), 1.0, 1e-10);
                EXPECT_NEAR(conclusive_mass(runs), d * s.min_coeff_squared(), 1e-10);
                for (const auto &r : runs) {
                    EXPECT_GE(r.probability, 0.0);
                    EXPECT_LE(r.probability, 1.0);
                    if (r.branch == BranchType::Conclusive) {
                        EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
                    }
                }
            }
        }
    }
}

TEST(teleport, sampled_runs_match_enumeration) {
    const auto s = qutrit_example();
    const ConclusiveProtocol protocol(s);
    RngStream gen(18);
    const StateVector psi = haar_state(3, gen);
    const auto runs = protocol.enumerate(psi, CorrectionStrategy::XAndZ);
    std::map<std::pair<int, int>, int> counts;
    const int trials = 100000;
    RngStream rng(19);
    for (int i = 0; i < trials; ++i) {
        const auto r = protocol.run(psi, CorrectionStrategy::XAndZ, rng);
        const int o2 = r.branch == BranchType::Conclusive ? r.l_or_s : r.l_or_s + 3;
        ++counts[{o2, r.k}];
    }
    for (const auto &r : runs) {
        const int o2 = r.branch == BranchType::Conclusive ? r.l_or_s : r.l_or_s + 3;
        const double p = r.probability;
        const double freq = counts[{o2, r.k}] / static_cast<double>(trials);
        EXPECT_NEAR(freq, p, 3.0 * std::sqrt(p * (1 - p) / trials) + 1e-12) << o2 << "," << r.k;
    }
}

TEST(teleport, sampled_run_is_seed_deterministic) {
    const auto s = qutrit_example();
    RngStream gen(1);
    const StateVector psi = haar_state(3, gen);
    RngStream a(42), b(42);
    for (int i = 0; i < 50; ++i) {
        const auto ra = run_conclusive(s, psi, CorrectionStrategy::XOnly, a);
        const auto rb = run_conclusive(s, psi, CorrectionStrategy::XOnly, b);
        EXPECT_EQ(ra.l_or_s, rb.l_or_s);
        EXPECT_EQ(ra.k, rb.k);
        EXPECT_EQ(ra.branch, rb.branch);
    }
}

TEST(teleport, conclusive_mass_is_input_independent) {
    const auto s = qutrit_example();
    const ConclusiveProtocol protocol(s);
    RngStream rng(20);
    for (int i = 0; i < 10; ++i) {
        EXPECT_NEAR(conclusive_mass(protocol.enumerate(haar_state(3, rng), CorrectionStrategy::NoCorrection)), 0.6,
                    1e-10);
    }
}

TEST(teleport, completion_order_does_not_change_statistics) {
    std::mt19937_64 gen(21);
    RngStream rng(21);
    for (int d = 2; d <= 4; ++d) {
        const auto s = random_li_spectrum(d, gen);
        CompletionOrder reversed(static_cast<std::size_t>(2 * d));
        std::iota(reversed.rbegin(), reversed.rend(), 0);
        const ConclusiveProtocol a(s);
        const ConclusiveProtocol b(s, reversed);
        const StateVector psi = haar_state(d, rng);
        const auto ra = a.enumerate(psi, CorrectionStrategy::XAndZ);
        const auto rb = b.enumerate(psi, CorrectionStrategy::XAndZ);
        ASSERT_EQ(ra.size(), rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
            EXPECT_NEAR(ra[i].probability, rb[i].probability, 1e-10);
        }
    }
}

TEST(teleport, measurement_order_does_not_change_joint_distribution) {
    const ConclusiveProtocol protocol(qutrit_example());
    RngStream rng(22);
    const StateVector state = protocol.after_discrimination(haar_state(3, rng));
    std::map<std::pair<int, int>, double> forward, backward;
    for (const auto &r2 : enumerate_branches(state, kSenderChannel, std::nullopt)) {
        if (r2.probability == 0.0) {
            continue;
        }
        for (const auto &r3 : enumerate_branches(r2.post_state, kSenderInput, std::nullopt)) {
            forward[{r2.outcome, r3.outcome}] = r2.probability * r3.probability;
        }
    }
    for (const auto &r3 : enumerate_branches(state, kSenderInput, std::nullopt)) {
        for (const auto &r2 : enumerate_branches(r3.post_state, kSenderChannel, std::nullopt)) {
            backward[{r2.outcome, r3.outcome}] = r2.probability * r3.probability;
        }
    }
    for (const auto &[key, p] : forward) {
        EXPECT_NEAR(p, backward[key], 1e-12);
    }
}

TEST(teleport, conditional_states_match_closed_forms) {
    std::mt19937_64 gen(23);
    RngStream rng(23);
    for (int d = 2; d <= 5; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = random_li_spectrum(d, gen);
            const auto report = conditional_state_check(s, haar_state(d, rng));
            EXPECT_TRUE(report.passed()) << report.max_deviation();
            EXPECT_NEAR(report.conclusive_prefactor_ratio, std::sqrt(d * s.min_coeff_squared()), 1e-9);
            EXPECT_NEAR(report.inconclusive_prefactor_ratio, 1.0, 1e-9);
        }
    }
    const auto maximal = conditional_state_check(SchmidtSpectrum::maximal(3), haar_state(3, rng));
    EXPECT_TRUE(maximal.passed());
}

TEST(teleport, two_channel_identity) {
    std::mt19937_64 gen(24);
    RngStream rng(24);
    for (int d = 2; d <= 6; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            EXPECT_LT(two_channel_identity_deviation(random_li_spectrum(d, gen), haar_state(d, rng)), 1e-9);
        }
    }
    EXPECT_LT(two_channel_identity_deviation(SchmidtSpectrum::maximal(4), haar_state(4, rng)), 1e-9);
}

TEST(teleport, errors) {
    RngStream rng(25);
    const SchmidtSpectrum ld({0.0, 1.0});
    EXPECT_THROW(enumerate_runs(ld, haar_state(2, rng), CorrectionStrategy::XOnly), LinearlyDependentError);
    EXPECT_THROW(run_conclusive(qubit_example(), haar_state(3, rng), CorrectionStrategy::XOnly, rng), Error);
}

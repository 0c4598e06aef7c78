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

#include "qtele/discrimination.hpp"

#include <algorithm>
#include <cmath>
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

std::vector<double> uniform_p(int d, double p) {
    return std::vector<double>(static_cast<std::size_t>(d), p);
}

}  // namespace

TEST(discrimination, optimal_failure_examples) {
    EXPECT_NEAR(optimal_failure(SchmidtSpectrum::maximal(4)), 0.0, 1e-15);
    EXPECT_NEAR(optimal_failure(qubit_example()), 0.28, 1e-15);
    EXPECT_NEAR(optimal_failure(qutrit_example()), 0.4, 1e-12);
    EXPECT_THROW(optimal_failure(SchmidtSpectrum({1.0, 0.0})), LinearlyDependentError);
}

TEST(discrimination, qubit_failure_is_nu_overlap) {
    const auto s = qubit_example();
    EXPECT_NEAR(optimal_failure(s), std::abs(nu_family(s).gram(0, 1)), 1e-15);
}

TEST(discrimination, q_matrix_limits) {
    const auto s = qutrit_example();
    const auto q0 = q_matrix(s, uniform_p(3, 0.0));
    EXPECT_LT((q0.entries - nu_family(s).gram).cwiseAbs().maxCoeff(), 1e-12);

    const auto qmax = q_matrix(SchmidtSpectrum::maximal(3), uniform_p(3, 1.0));
    EXPECT_LT(qmax.entries.cwiseAbs().maxCoeff(), 1e-12);

    const double bad[] = {0.5, 1.5, 0.5};
    EXPECT_THROW(q_matrix(s, bad), Error);
}

TEST(discrimination, fourier_conjugate_of_q_is_diagonal) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 5;
        const auto s = random_li_spectrum(d, gen);
        const double f = 0.37;
        const auto q = q_matrix(s, uniform_p(d, 1.0 - f));
        const CMatrix f_mat = fourier(d).matrix();
        const CMatrix diag = f_mat * q.entries * f_mat.adjoint();
        for (int m = 0; m < d; ++m) {
            for (int n = 0; n < d; ++n) {
                const Complex expected = m == n ? Complex(f - 1.0 + d * s[m] * s[m]) : Complex{};
                EXPECT_LT(std::abs(diag(m, n) - expected), 1e-10);
            }
        }
    }
}

TEST(discrimination, q_is_psd_and_singular_at_optimum) {
    std::mt19937_64 gen(15);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 5;
        const auto s = random_li_spectrum(d, gen);
        const double success = 1.0 - optimal_failure(s);
        const auto q = q_matrix(s, uniform_p(d, success));
        EXPECT_TRUE((q.entries - q.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        const double lo = q.min_eigenvalue();
        EXPECT_GE(lo, -1e-10);
        EXPECT_LE(lo, 1e-8);
        // One step past the optimum breaks positivity.
        EXPECT_LT(q_matrix(s, uniform_p(d, success + 0.01)).min_eigenvalue(), -1e-6);
    }
}

TEST(discrimination, phi_states_examples) {
    for (const auto &phi : phi_states(SchmidtSpectrum::maximal(3))) {
        EXPECT_EQ(phi.norm(), 0.0);
    }
    for (const auto &phi : phi_states(qubit_example())) {
        EXPECT_NEAR(phi.squaredNorm(), 0.28, 1e-12);
    }
}

TEST(discrimination, phi_gram_equals_optimal_q) {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 5;
        const auto s = random_li_spectrum(d, gen);
        const auto phi = phi_states(s);
        const auto q = q_matrix(s, uniform_p(d, 1.0 - optimal_failure(s)));
        CMatrix gram(d, d);
        for (int k = 0; k < d; ++k) {
            for (int l = 0; l < d; ++l) {
                gram(k, l) = phi[static_cast<std::size_t>(k)].dot(phi[static_cast<std::size_t>(l)]);
            }
            EXPECT_NEAR(gram(k, k).real(), optimal_failure(s), 1e-10);
        }
        EXPECT_LT((gram - q.entries).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LE(hermitian_rank(gram), d - 1);
    }
}

TEST(discrimination, oracle_maximal) {
    const auto r = feasibility_oracle(SchmidtSpectrum::maximal(3), 0.01);
    EXPECT_LE(r.failure, 0.01);
}

TEST(discrimination, oracle_qubit) {
    const auto r = feasibility_oracle(qubit_example(), 0.005);
    EXPECT_NEAR(r.failure, 0.28, 0.01);
    EXPECT_LE(std::abs(r.best_p[0] - r.best_p[1]), 0.005 + 1e-12);
}

TEST(discrimination, oracle_agrees_with_closed_form) {
    std::mt19937_64 gen(404);
    for (int trial = 0; trial < 8; ++trial) {
        const int d = 2 + trial % 2;
        const auto s = random_li_spectrum(d, gen);
        const double res = 0.01;
        const auto r = feasibility_oracle(s, res);
        EXPECT_GE(r.failure, optimal_failure(s) - 1e-9);
        EXPECT_LT(r.failure - optimal_failure(s), res * d);
        EXPECT_EQ(r.best_p.size(), static_cast<std::size_t>(d));
    }
}

TEST(discrimination, oracle_handles_tied_minima) {
    const double squares[] = {0.25, 0.25, 0.5};
    const auto s = SchmidtSpectrum::from_squares(squares);
    const auto r = feasibility_oracle(s, 0.005);
    EXPECT_NEAR(optimal_failure(s), 0.25, 1e-12);
    EXPECT_GE(r.failure, 0.25 - 1e-9);
    EXPECT_LT(r.failure - 0.25, 0.005 * 3);
}

TEST(discrimination, oracle_brute_force_matches_bisection) {
    // Full scan of the d=2 grid, no monotonicity shortcuts.
    const auto s = SchmidtSpectrum({0.45, std::sqrt(1 - 0.45 * 0.45)});
    const double res = 0.02;
    const int steps = 50;
    int best = -1;
    const auto gram = nu_family(s).gram;
    for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
            CMatrix q = gram;
            q(0, 0) -= i * res;
            q(1, 1) -= j * res;
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(q, Eigen::EigenvaluesOnly);
            if (eig.eigenvalues()[0] >= -1e-10) {
                best = std::max(best, i + j);
            }
        }
    }
    EXPECT_NEAR(feasibility_oracle(s, res).failure, 1.0 - best * res / 2, 1e-12);
}

TEST(discrimination, oracle_errors) {
    EXPECT_THROW(feasibility_oracle(SchmidtSpectrum::maximal(5), 0.1), Error);
    try {
        feasibility_oracle(SchmidtSpectrum::maximal(5), 0.1);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::OracleUnsupported);
    }
    EXPECT_THROW(feasibility_oracle(qubit_example(), 0.0), Error);
}

TEST(discrimination, unitary_maximal_is_conclusive) {
    const int d = 3;
    const auto plan = build_unitary(SchmidtSpectrum::maximal(d));
    EXPECT_NEAR(plan.failure, 0.0, 1e-15);
    const auto family = nu_family(SchmidtSpectrum::maximal(d));
    for (int l = 0; l < d; ++l) {
        const CVector image = plan.unitary.matrix() * plan.embed(family.states[static_cast<std::size_t>(l)].amps());
        EXPECT_NEAR(std::norm(image[l]), 1.0, 1e-12);
        EXPECT_LT(image.tail(d).norm(), 1e-12);
    }
    // Restricted to the embedded block the map is the inverse Fourier transform up to index relabelling.
    const CMatrix block = plan.unitary.matrix().topLeftCorner(d, d);
    EXPECT_LT((block.adjoint() * block - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(discrimination, unitary_qubit_statistics) {
    const auto s = qubit_example();
    const auto plan = build_unitary(s);
    const auto family = nu_family(s);
    const CVector image = plan.unitary.matrix() * plan.embed(family.states[0].amps());
    EXPECT_NEAR(std::norm(image[0]), 0.72, 1e-12);
    EXPECT_LT(std::norm(image[1]), 1e-20);
    EXPECT_NEAR(image.tail(2).squaredNorm(), 0.28, 1e-12);
}

TEST(discrimination, unitary_is_unambiguous) {
    std::mt19937_64 gen(909);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 3;
        const auto s = random_li_spectrum(d, gen);
        const auto plan = build_unitary(s);
        EXPECT_LE(plan.unitary.unitarity_residual(), 1e-10);
        const auto family = nu_family(s);
        const double sqrt_s = std::sqrt(plan.success);
        for (int l = 0; l < d; ++l) {
            const CVector image =
                plan.unitary.matrix() * plan.embed(family.states[static_cast<std::size_t>(l)].amps());
            for (int lp = 0; lp < d; ++lp) {
                if (lp != l) {
                    EXPECT_LE(std::norm(image[lp]), 1e-20);
                }
            }
            EXPECT_LT(std::abs(image[l] - sqrt_s), 1e-10);
            EXPECT_LT((image.tail(d) - plan.phi[static_cast<std::size_t>(l)]).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(discrimination, unitary_is_bit_reproducible) {
    const auto s = qutrit_example();
    EXPECT_EQ(build_unitary(s).unitary.matrix(), build_unitary(s).unitary.matrix());
}

TEST(discrimination, completion_order_does_not_change_embedded_action) {
    const auto s = qutrit_example();
    CompletionOrder reversed(6);
    std::iota(reversed.rbegin(), reversed.rend(), 0);
    const auto a = build_unitary(s);
    const auto b = build_unitary(s, reversed);
    EXPECT_LT((a.unitary.matrix().leftCols(3) - b.unitary.matrix().leftCols(3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(b.unitary.unitarity_residual(), 1e-10);
}

TEST(discrimination, priors) {
    const double uniform[] = {0.5, 0.5};
    EXPECT_NO_THROW(build_unitary(qubit_example(), std::span<const double>(uniform)));
    const double skewed[] = {0.3, 0.7};
    try {
        build_unitary(qubit_example(), std::span<const double>(skewed));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedPriors);
    }
}

TEST(discrimination, linearly_dependent_rejected) {
    const SchmidtSpectrum s({0.0, 0.6, 0.8});
    EXPECT_THROW(build_unitary(s), LinearlyDependentError);
    EXPECT_THROW(phi_states(s), LinearlyDependentError);
    EXPECT_THROW(feasibility_oracle(s, 0.1), LinearlyDependentError);
}

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

#include "qtele/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "qtele/channel.hpp"
#include "qtele/discrimination.hpp"
#include "qtele/fidelity.hpp"
#include "qtele/qudit.hpp"
#include "qtele/teleport.hpp"

namespace qtele {

namespace {

struct Budget {
    int algebra_max_d;
    int oracle_spectra;
    double oracle_resolution;
    double oracle_tolerance;
    int unambiguity_spectra;
    int mass_spectra;
    int mass_inputs;
    int sweep_spectra;
    int collapse_spectra;
    int state_spectra;
    int adjudication_spectra;
    std::uint64_t haar_trials;
    int mc_configs;
    std::uint64_t mc_trials;
};

constexpr Budget kQuick{5, 2, 0.02, 0.04, 3, 2, 3, 3, 5, 2, 2, 10000, 4, 1000};
constexpr Budget kFull{8, 10, 0.005, 0.01, 20, 5, 10, 20, 20, 5, 10, 100000, 20, 10000};

// Distinct child streams per check keep each check reproducible on its own.
enum StreamId : std::uint64_t {
    kOracleStream = 1,
    kUnambiguityStream,
    kMassStream,
    kSweepStream,
    kCollapseStream,
    kStateStream,
    kAdjudicationStream,
    kHaarStream,
    kMcStream,
};

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

class Suite {
   public:
    explicit Suite(std::vector<CheckResult> &checks) : checks_(checks) {}

    void add(std::string name, double value, double tolerance, std::string detail) {
        const bool ok = std::isfinite(value) && value <= tolerance;
        checks_.push_back({std::move(name), ok, value, tolerance, std::move(detail)});
    }

   private:
    std::vector<CheckResult> &checks_;
};

void check_algebra(Suite &suite, const Budget &b) {
    double weyl = 0.0;
    double bell = 0.0;
    double mapping = 0.0;
    for (int d = 2; d <= b.algebra_max_d; ++d) {
        const DenseOperator x = shift_x(d);
        const DenseOperator z = clock_z(d);
        const DenseOperator g = gxor(d);
        const CMatrix id = CMatrix::Identity(d, d);
        const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
        weyl = std::max({weyl, max_abs(x.pow(d).matrix() - id), max_abs(z.pow(d).matrix() - id),
                         max_abs((g * g).matrix() - CMatrix::Identity(d * d, d * d)),
                         max_abs((z * x).matrix() - omega * (x * z).matrix())});

        CMatrix basis(d * d, d * d);
        for (int n = 0; n < d; ++n) {
            for (int m = 0; m < d; ++m) {
                basis.col(n * d + m) = bell_state(n, m, d).amps();
            }
        }
        bell = std::max(bell, max_abs(basis.adjoint() * basis - CMatrix::Identity(d * d, d * d)));

        const DenseOperator f = fourier(d);
        const int pair[] = {0, 1};
        for (int l = 0; l < d; ++l) {
            for (int k = 0; k < d; ++k) {
                const StateVector image = apply(g, bell_state(l, k, d), pair);
                const int target[] = {(d - k) % d};
                const StateVector expected =
                    StateVector({d}, f.matrix().col(l)).tensor(StateVector::basis({d}, target));
                mapping = std::max(mapping, max_abs(image.amps() - expected.amps()));
            }
        }
    }
    const std::string range = "d in [2," + std::to_string(b.algebra_max_d) + "]";
    suite.add("weyl-algebra", weyl, 1e-10, "X^d = Z^d = GXOR^2 = I and ZX = wXZ, " + range);
    suite.add("bell-orthonormality", bell, 1e-10, range);
    suite.add("gxor-bell-mapping", mapping, 1e-10, "GXOR|Psi_{l,k}> = F|l> (x) |-k mod d>, " + range);
}

void check_oracle(Suite &suite, const Budget &b, const RngStream &master, VerifyReport &report) {
    RngStream rng = master.spawn(kOracleStream);
    double worst = 0.0;
    for (int d : {2, 3}) {
        for (int i = 0; i < b.oracle_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            const auto r = feasibility_oracle(s, b.oracle_resolution);
            const double closed = optimal_failure(s);
            worst = std::max(worst, std::abs(r.failure - closed));
            report.oracle.push_back({s.coeffs(), b.oracle_resolution, closed, r.failure, r.evaluations});
        }
    }
    suite.add("oracle-failure", worst, b.oracle_tolerance, "grid oracle vs 1 - d*Amin^2, d in {2,3}");
}

void check_unambiguity(Suite &suite, const Budget &b, const RngStream &master) {
    RngStream rng = master.spawn(kUnambiguityStream);
    double cross = 0.0;
    double conclusive = 0.0;
    for (int d : {2, 3, 4}) {
        for (int i = 0; i < b.unambiguity_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            const ConclusiveProtocol protocol(s);
            const auto &plan = protocol.plan();
            const auto family = nu_family(s);
            for (int l = 0; l < d; ++l) {
                const CVector image = plan.unitary.matrix() * plan.embed(family.states[static_cast<std::size_t>(l)].amps());
                for (int lp = 0; lp < d; ++lp) {
                    if (lp != l) {
                        cross = std::max(cross, std::norm(image[lp]));
                    }
                }
            }
            for (const auto &run : protocol.enumerate(haar_state(d, rng), CorrectionStrategy::XOnly)) {
                if (run.branch == BranchType::Conclusive && run.probability > 0.0) {
                    conclusive = std::max(conclusive, std::abs(1.0 - run.fidelity));
                }
            }
        }
    }
    suite.add("unambiguity", cross, 1e-20, "max |<u_l'|U|nu_l>|^2 for l' != l, d in {2,3,4}");
    suite.add("conclusive-fidelity", conclusive, 1e-10, "max |1 - F| over conclusive branches");
}

void check_success_mass(Suite &suite, const Budget &b, const RngStream &master) {
    RngStream rng = master.spawn(kMassStream);
    double worst = 0.0;
    double total = 0.0;
    for (int d = 2; d <= 6; ++d) {
        for (int i = 0; i < b.mass_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            const ConclusiveProtocol protocol(s);
            for (int j = 0; j < b.mass_inputs; ++j) {
                double mass = 0.0;
                double sum = 0.0;
                for (const auto &run : protocol.enumerate(haar_state(d, rng), CorrectionStrategy::NoCorrection)) {
                    sum += run.probability;
                    if (run.branch == BranchType::Conclusive) {
                        mass += run.probability;
                    }
                }
                worst = std::max(worst, std::abs(mass - d * s.min_coeff_squared()));
                total = std::max(total, std::abs(sum - 1.0));
            }
        }
    }
    suite.add("success-mass", worst, 1e-10, "conclusive probability = d*Amin^2 for Haar inputs, d in [2,6]");
    suite.add("branch-normalization", total, 1e-10, "branch probabilities sum to 1");
}

void check_fidelity_sweep(Suite &suite, const Budget &b, const RngStream &master) {
    RngStream rng = master.spawn(kSweepStream);
    double e0 = 0.0;
    double e1 = 0.0;
    double order = -1.0;
    double bound = -1.0;
    double mass = 0.0;
    for (int d = 2; d <= 6; ++d) {
        for (int i = 0; i < b.sweep_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            const auto none = exact_average_breakdown(s, CorrectionStrategy::NoCorrection);
            const auto x = exact_average_breakdown(s, CorrectionStrategy::XOnly);
            const auto xz = exact_average_breakdown(s, CorrectionStrategy::XAndZ);
            e0 = std::max(e0, std::abs(none.total - f0(s)));
            e1 = std::max(e1, std::abs(x.total - f1(s)));
            order = std::max({order, f0(s) - f1(s), f1(s) - f2(s), none.total - x.total, x.total - xz.total});
            bound = std::max(bound, xz.total - banaszek_bound(s.coeffs(), BanaszekVariant::Corrected));
            for (const auto &part : {none, x, xz}) {
                mass = std::max({mass, std::abs(part.conclusive - d * s.min_coeff_squared()),
                                 std::abs(part.conclusive + part.inconclusive - part.total)});
            }
        }
    }
    suite.add("f0-reproduction", e0, 1e-9, "exact(none) = 1/d + (d-1)Amin^2, d in [2,6]");
    suite.add("f1-reproduction", e1, 1e-9, "exact(x) = (2 + d(d-1)Amin^2)/(d+1), d in [2,6]");
    suite.add("fidelity-ordering", order, 1e-9, "f0 <= f1 <= f2 and exact(none) <= exact(x) <= exact(xz)");
    suite.add("banaszek-bound", bound, 1e-9, "exact(xz) <= corrected bound");
    suite.add("conclusive-mass-decomposition", mass, 1e-9, "exact = d*Amin^2 + inconclusive part");
}

void check_collapse(Suite &suite, const Budget &b, const RngStream &master) {
    RngStream rng = master.spawn(kCollapseStream);
    double worst = 0.0;
    for (int i = 0; i < b.collapse_spectra; ++i) {
        const auto s = random_spectrum(2, rng);
        const double exact = exact_average(s, CorrectionStrategy::XAndZ);
        worst = std::max({worst, std::abs(exact - f1(s)), std::abs(f1(s) - f2(s))});
    }
    suite.add("qubit-collapse", worst, 1e-9, "d = 2: exact(xz) = f1 = f2");
}

void check_states(Suite &suite, const Budget &b, const RngStream &master) {
    RngStream rng = master.spawn(kStateStream);
    double conditional = 0.0;
    double identity = 0.0;
    for (int d = 2; d <= 5; ++d) {
        for (int i = 0; i < b.state_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            conditional = std::max(conditional, conditional_state_check(s, haar_state(d, rng)).max_deviation());
            identity = std::max(identity, two_channel_identity_deviation(s, haar_state(d, rng)));
        }
    }
    suite.add("conditional-states", conditional, 1e-9, "branch states vs closed forms up to phase, d in [2,5]");
    suite.add("two-channel-identity", identity, 1e-9, "post-unitary state vs split-channel form, d in [2,5]");
}

void check_adjudication(Suite &suite, const Budget &b, const RngStream &master, VerifyReport &report) {
    RngStream rng = master.spawn(kAdjudicationStream);
    double worst = -1.0;
    for (int d : {3, 4}) {
        for (int i = 0; i < b.adjudication_spectra; ++i) {
            const auto s = random_spectrum(d, rng);
            AdjudicationRow row{s.coeffs(), f1(s), exact_average(s, CorrectionStrategy::XAndZ), f2(s),
                                banaszek_bound(s.coeffs(), BanaszekVariant::Corrected),
                                banaszek_bound(s.coeffs(), BanaszekVariant::AsWritten), 0.0, false};
            const auto split = decompose_channel(s);
            std::vector<double> t(static_cast<std::size_t>(d), std::sqrt(split.weight_success / d));
            for (double r : split.residual) {
                t.push_back(std::sqrt(1.0 - split.weight_success) * r);
            }
            row.banaszek_decomposition = banaszek_bound(t, BanaszekVariant::Corrected, d);
            const double violation = std::max(row.f1 - row.exact, row.exact - row.banaszek_corrected);
            row.bracket_ok = violation <= 1e-9;
            worst = std::max(worst, violation);
            report.adjudication.push_back(std::move(row));
        }
    }
    suite.add("adjudication-bracket", worst, 1e-9, "f1 <= exact(xz) <= corrected bound, d in {3,4}");
}

void check_haar(Suite &suite, const Budget &b, const RngStream &master) {
    const RngStream rng = master.spawn(kHaarStream);
    double worst = 0.0;
    std::uint64_t index = 0;
    for (int d : {2, 3, 4}) {
        for (int other : {0, 1}) {
            const auto m = haar_moment_check(d, 0, other, b.haar_trials, rng.spawn(index++));
            worst = std::max(worst, std::abs(m.estimate - m.expected) / m.std_error);
        }
    }
    suite.add("haar-moment", worst, 3.0,
              "z-score of E|<a|psi>|^2|<b|psi>|^2 vs (1 + [a=b])/(d(d+1)), " + std::to_string(b.haar_trials) +
                  " samples");
}

void check_mc(Suite &suite, const Budget &b, const RngStream &master, int threads) {
    RngStream rng = master.spawn(kMcStream);
    double worst = 0.0;
    for (int i = 0; i < b.mc_configs; ++i) {
        const int d = 2 + i % 5;
        const auto strategy = kAllStrategies[static_cast<std::size_t>(i % 3)];
        const auto s = random_spectrum(d, rng);
        const auto mc = mc_average(s, strategy, b.mc_trials, rng.spawn(static_cast<std::uint64_t>(i) + 1000), threads);
        worst = std::max(worst, std::abs(mc.mean - exact_average(s, strategy)) / mc.std_error);
    }
    suite.add("mc-exact", worst, 3.0,
              "z-score of Monte Carlo vs exact, " + std::to_string(b.mc_configs) + " configurations x " +
                  std::to_string(b.mc_trials) + " trials");
}

}  // namespace

std::string_view depth_name(VerifyDepth depth) {
    return depth == VerifyDepth::Quick ? "quick" : "full";
}

std::optional<VerifyDepth> parse_depth(std::string_view name) {
    if (name == "quick") {
        return VerifyDepth::Quick;
    }
    if (name == "full") {
        return VerifyDepth::Full;
    }
    return std::nullopt;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
    std::vector<std::string> out;
    for (const auto &c : checks) {
        if (!c.passed) {
            out.push_back(c.name);
        }
    }
    return out;
}

VerifyReport run_verification(VerifyDepth depth, std::uint64_t seed, int threads) {
    const Budget &b = depth == VerifyDepth::Quick ? kQuick : kFull;
    const RngStream master(seed);
    VerifyReport report{depth, seed, {}, {}, {}};
    Suite suite(report.checks);
    check_algebra(suite, b);
    check_oracle(suite, b, master, report);
    check_unambiguity(suite, b, master);
    check_success_mass(suite, b, master);
    check_fidelity_sweep(suite, b, master);
    check_collapse(suite, b, master);
    check_states(suite, b, master);
    check_adjudication(suite, b, master, report);
    check_haar(suite, b, master);
    check_mc(suite, b, master, threads);
    return report;
}

}  // namespace qtele

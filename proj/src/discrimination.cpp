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

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qtele/errors.hpp"

namespace qtele {

namespace {

constexpr double kPsdTolerance = 1e-10;

double min_hermitian_eigenvalue(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[0];
}

// Modified Gram–Schmidt with one reorthogonalization pass.
bool orthogonalize_against(CVector &v, const CMatrix &basis, Eigen::Index count) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < count; ++c) {
            v -= basis.col(c) * basis.col(c).dot(v);
        }
    }
    const double n = v.norm();
    if (n < 1e-8) {
        return false;
    }
    v /= n;
    return true;
}

class OracleSearch {
   public:
    OracleSearch(const SchmidtSpectrum &s, double resolution)
        : d_(s.d()),
          resolution_(resolution),
          steps_(static_cast<int>(std::floor(1.0 / resolution + 1e-9))),
          gram_(nu_family(s).gram),
          index_(static_cast<std::size_t>(d_), 0) {
    }

    OracleResult run() {
        descend(0);
        OracleResult result;
        result.evaluations = evaluations_;
        result.best_p.resize(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) {
            result.best_p[static_cast<std::size_t>(k)] = best_[static_cast<std::size_t>(k)] * resolution_;
        }
        result.failure = best_sum_ < 0 ? 1.0 : 1.0 - static_cast<double>(best_sum_) * resolution_ / d_;
        return result;
    }

   private:
    bool feasible() {
        ++evaluations_;
        CMatrix q = gram_;
        for (int k = 0; k < d_; ++k) {
            q(k, k) -= index_[static_cast<std::size_t>(k)] * resolution_;
        }
        return min_hermitian_eigenvalue(q) >= -kPsdTolerance;
    }

    void descend(int depth) {
        auto &slot = index_[static_cast<std::size_t>(depth)];
        if (depth == d_ - 1) {
            slot = 0;
            if (!feasible()) {
                return;
            }
            int lo = 0;
            int hi = steps_ + 1;  // first infeasible candidate
            while (hi - lo > 1) {
                const int mid = lo + (hi - lo) / 2;
                slot = mid;
                if (feasible()) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            slot = lo;
            const int sum = std::accumulate(index_.begin(), index_.end(), 0);
            if (sum > best_sum_) {
                best_sum_ = sum;
                best_ = index_;
            }
            slot = 0;
            return;
        }
        for (int i = 0; i <= steps_; ++i) {
            slot = i;
            // Trailing coordinates are zero here; if this prefix is already
            // infeasible, every larger value of this coordinate is too.
            if (!feasible()) {
                break;
            }
            descend(depth + 1);
        }
        slot = 0;
    }

    int d_;
    double resolution_;
    int steps_;
    CMatrix gram_;
    std::vector<int> index_;
    std::vector<int> best_;
    int best_sum_ = -1;
    long long evaluations_ = 0;
};

}  // namespace

CVector DiscriminationPlan::embed(const CVector &particle2) const {
    if (particle2.size() != d) {
        throw Error(ErrorKind::ShapeError, "particle-2 vector must have length d");
    }
    CVector out = CVector::Zero(2 * d);
    out.head(d) = particle2;
    return out;
}

double optimal_failure(const SchmidtSpectrum &s) {
    s.require_linearly_independent();
    return 1.0 - s.d() * s.min_coeff_squared();
}

double QMatrix::min_eigenvalue() const {
    return min_hermitian_eigenvalue(entries);
}

QMatrix q_matrix(const SchmidtSpectrum &s, std::span<const double> p) {
    const int d = s.d();
    if (static_cast<int>(p.size()) != d) {
        throw Error(ErrorKind::ShapeError, "need one success probability per nu state");
    }
    CMatrix q = gram_closed_form(s);
    for (int k = 0; k < d; ++k) {
        const double pk = p[static_cast<std::size_t>(k)];
        if (!(pk >= 0.0 && pk <= 1.0)) {
            throw Error(ErrorKind::InvalidCoefficients, "success probabilities must lie in [0, 1]");
        }
        q(k, k) -= pk;
    }
    return {d, std::move(q)};
}

OracleResult feasibility_oracle(const SchmidtSpectrum &s, double resolution) {
    s.require_linearly_independent();
    if (s.d() > kOracleMaxDimension) {
        throw Error(ErrorKind::OracleUnsupported,
                    "grid oracle supports d <= " + std::to_string(kOracleMaxDimension) + ", got " + std::to_string(s.d()));
    }
    if (!(resolution > 0.0 && resolution <= 1.0)) {
        throw Error(ErrorKind::InvalidGrid, "oracle resolution must lie in (0, 1]");
    }
    return OracleSearch(s, resolution).run();
}

std::vector<CVector> phi_states(const SchmidtSpectrum &s) {
    s.require_linearly_independent();
    const int d = s.d();
    const double amin2 = s.min_coeff_squared();
    std::vector<double> beta(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) {
        beta[static_cast<std::size_t>(m)] = std::sqrt(s[m] * s[m] - amin2);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<CVector> phi;
    phi.reserve(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) {
        CVector v(d);
        for (int k = 0; k < d; ++k) {
            Complex acc{};
            for (int m = 0; m < d; ++m) {
                const int phase = ((m * (l - k)) % d + d) % d;
                acc += std::polar(beta[static_cast<std::size_t>(m)], 2.0 * std::numbers::pi * phase / d);
            }
            v[k] = scale * acc;
        }
        phi.push_back(std::move(v));
    }
    return phi;
}

DiscriminationPlan build_unitary(const SchmidtSpectrum &s, const CompletionOrder &order) {
    s.require_linearly_independent();
    const int d = s.d();
    const int n = 2 * d;
    const double failure = optimal_failure(s);
    const double success = 1.0 - failure;
    const double sqrt_success = std::sqrt(success);

    const NuFamily family = nu_family(s);
    auto phi = phi_states(s);

    CMatrix nu(d, d);
    CMatrix targets = CMatrix::Zero(n, d);
    for (int l = 0; l < d; ++l) {
        nu.col(l) = family.states[static_cast<std::size_t>(l)].amps();
        targets(l, l) = sqrt_success;
        targets.block(d, l, d, 1) = phi[static_cast<std::size_t>(l)];
    }

    // ν_l ↦ t_l extends to an isometry iff the two families share a Gram matrix.
    const double isometry_error = (targets.adjoint() * targets - family.gram).cwiseAbs().maxCoeff();
    if (isometry_error > 1e-10) {
        throw Error(ErrorKind::InternalConsistency,
                    "target states do not reproduce the nu Gram matrix (error " + std::to_string(isometry_error) + ")");
    }

    // W = T N⁻¹ is the isometry on the embedded particle-2 space.
    CMatrix w = nu.transpose().partialPivLu().solve(targets.transpose()).transpose();

    CMatrix u = CMatrix::Zero(n, n);
    u.leftCols(d) = w;
    std::vector<int> feed = order;
    if (feed.empty()) {
        feed.resize(static_cast<std::size_t>(n));
        std::iota(feed.begin(), feed.end(), 0);
    }
    if (static_cast<int>(feed.size()) != n) {
        throw Error(ErrorKind::ShapeError, "completion order must list each of the 2d coordinates");
    }
    Eigen::Index filled = d;
    for (int j : feed) {
        if (filled == n) {
            break;
        }
        if (j < 0 || j >= n) {
            throw Error(ErrorKind::ShapeError, "completion order index out of range");
        }
        CVector v = CVector::Zero(n);
        v[j] = 1.0;
        if (orthogonalize_against(v, u, filled)) {
            u.col(filled++) = v;
        }
    }
    if (filled != n) {
        throw Error(ErrorKind::InternalConsistency, "unitary completion did not span the full space");
    }

    DiscriminationPlan plan{d, failure, success, std::move(phi), DenseOperator(std::move(u))};
    if (plan.unitary.unitarity_residual() > 1e-10) {
        throw Error(ErrorKind::InternalConsistency, "completed discrimination operator is not unitary");
    }
    for (int l = 0; l < d; ++l) {
        const CVector image = plan.unitary.matrix() * plan.embed(nu.col(l));
        if ((image - targets.col(l)).cwiseAbs().maxCoeff() > 1e-10) {
            throw Error(ErrorKind::InternalConsistency, "discrimination unitary misses its target states");
        }
    }
    return plan;
}

DiscriminationPlan build_unitary(const SchmidtSpectrum &s, std::span<const double> priors) {
    if (static_cast<int>(priors.size()) != s.d()) {
        throw Error(ErrorKind::ShapeError, "need one prior per nu state");
    }
    const double uniform = 1.0 / s.d();
    for (double eta : priors) {
        if (std::abs(eta - uniform) > 1e-12) {
            throw Error(ErrorKind::UnsupportedPriors, "only uniform priors 1/d are supported");
        }
    }
    return build_unitary(s);
}

}  // namespace qtele

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

#include "qtele/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qtele/errors.hpp"

namespace qtele {

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> coeffs, bool renormalize) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) {
        throw Error(ErrorKind::InvalidDimension, "a spectrum needs at least 2 coefficients");
    }
    double norm2 = 0.0;
    for (double a : coeffs_) {
        if (!std::isfinite(a) || a < 0.0) {
            throw Error(ErrorKind::InvalidCoefficients, "Schmidt coefficients must be finite and nonnegative");
        }
        norm2 += a * a;
    }
    if (renormalize) {
        if (!(norm2 > 0.0)) {
            throw Error(ErrorKind::InvalidCoefficients, "cannot renormalize an all-zero spectrum");
        }
        const double scale = 1.0 / std::sqrt(norm2);
        for (double &a : coeffs_) {
            a *= scale;
        }
    } else if (std::abs(norm2 - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidCoefficients,
                    "sum of squared coefficients is " + std::to_string(norm2) + ", expected 1");
    }
}

SchmidtSpectrum SchmidtSpectrum::from_squares(std::span<const double> squares, bool renormalize) {
    std::vector<double> coeffs;
    coeffs.reserve(squares.size());
    for (double sq : squares) {
        if (!std::isfinite(sq) || sq < 0.0) {
            throw Error(ErrorKind::InvalidCoefficients, "squared coefficients must be finite and nonnegative");
        }
        coeffs.push_back(std::sqrt(sq));
    }
    return SchmidtSpectrum(std::move(coeffs), renormalize);
}

SchmidtSpectrum SchmidtSpectrum::maximal(int d) {
    if (d < 2) {
        throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    }
    return SchmidtSpectrum(std::vector<double>(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d))));
}

SchmidtSpectrum random_spectrum(int d, RngStream &rng, double floor) {
    if (d < 2) {
        throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    }
    if (!(floor > 0.0 && floor < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "floor must lie in (0, 1)");
    }
    std::vector<double> squares(static_cast<std::size_t>(d));
    for (auto &v : squares) {
        v = floor + (1.0 - floor) * rng.uniform();
    }
    return SchmidtSpectrum::from_squares(squares, true);
}

double SchmidtSpectrum::min_coeff() const {
    return *std::min_element(coeffs_.begin(), coeffs_.end());
}

int SchmidtSpectrum::argmin() const {
    return static_cast<int>(std::min_element(coeffs_.begin(), coeffs_.end()) - coeffs_.begin());
}

std::vector<int> SchmidtSpectrum::zero_indices() const {
    std::vector<int> zeros;
    for (int m = 0; m < d(); ++m) {
        if (coeffs_[static_cast<std::size_t>(m)] <= kZeroAmplitude) {
            zeros.push_back(m);
        }
    }
    return zeros;
}

void SchmidtSpectrum::require_linearly_independent() const {
    auto zeros = zero_indices();
    if (!zeros.empty()) {
        throw LinearlyDependentError(std::move(zeros));
    }
}

StateVector channel_state(const SchmidtSpectrum &s) {
    const int d = s.d();
    CVector amps = CVector::Zero(d * d);
    for (int m = 0; m < d; ++m) {
        amps[m * d + m] = s[m];
    }
    return StateVector({d, d}, std::move(amps));
}

CMatrix gram_closed_form(const SchmidtSpectrum &s) {
    const int d = s.d();
    CMatrix g(d, d);
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            Complex acc{};
            for (int k = 0; k < d; ++k) {
                const int phase = ((k * (m - n)) % d + d) % d;
                acc += std::polar(s[k] * s[k], 2.0 * std::numbers::pi * phase / d);
            }
            g(n, m) = acc;
        }
    }
    return g;
}

NuFamily nu_family(const SchmidtSpectrum &s) {
    const int d = s.d();
    CVector base(d);
    for (int k = 0; k < d; ++k) {
        base[k] = s[k];
    }
    const DenseOperator z = clock_z(d);
    NuFamily family{d, {}, CMatrix(d, d)};
    family.states.reserve(static_cast<std::size_t>(d));
    CVector current = base;
    for (int l = 0; l < d; ++l) {
        family.states.emplace_back(std::vector<int>{d}, current);
        current = z.matrix() * current;
    }
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            family.gram(n, m) = family.states[static_cast<std::size_t>(n)].inner(family.states[static_cast<std::size_t>(m)]);
        }
    }
    const CMatrix closed = gram_closed_form(s);
    if ((closed - family.gram).cwiseAbs().maxCoeff() > 1e-12) {
        throw Error(ErrorKind::InternalConsistency, "closed-form Gram matrix disagrees with direct inner products");
    }
    return family;
}

int hermitian_rank(const CMatrix &m, double threshold) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return static_cast<int>((ev.array() > threshold).count());
}

LinearIndependence li_rank(const SchmidtSpectrum &s) {
    const int rank = s.d() - static_cast<int>(s.zero_indices().size());
    return {rank, rank == s.d(), hermitian_rank(nu_family(s).gram)};
}

ChannelDecomposition decompose_channel(const SchmidtSpectrum &s) {
    s.require_linearly_independent();
    const int d = s.d();
    const double amin2 = s.min_coeff_squared();
    const double weight = d * amin2;
    const double rest = 1.0 - weight;
    if (rest <= 1e-12) {
        return {1.0, {}, true};
    }
    std::vector<double> residual(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) {
        residual[static_cast<std::size_t>(n)] = std::sqrt((s[n] * s[n] - amin2) / rest);
    }
    return {weight, std::move(residual), false};
}

}  // namespace qtele

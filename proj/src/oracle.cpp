// Copyright 2026 The SBQS Authors
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

#include "sbqs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbqs/errors.hpp"

namespace sbqs {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        std::ostringstream ss;
        ss << what << ": dimension mismatch " << a << " vs " << b;
        throw DimensionError(ss.str());
    }
}

void require_state(const DensityMatrix &rho, const char *what) {
    if (!rho.is_normalized(1e-9)) {
        std::ostringstream ss;
        ss << what << ": input has trace " << rho.trace() << ", expected a normalized state";
        throw InvalidStateError(ss.str());
    }
}

// sqrt of a PSD matrix with eigenvalues below 1e-14 of the largest dropped. Removes the
// O(sqrt(eps)) noise a plain square root puts on numerically null directions.
ComplexMatrix truncated_sqrt(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m);
    const double top = std::max(eig.values.cwiseAbs().maxCoeff(), 1e-300);
    RealVector s(eig.values.size());
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        double v = eig.values(k);
        if (v < -kStateTolerance) {
            throw InvalidStateError("fidelity: input has a negative eigenvalue");
        }
        s(k) = v > 1e-14 * top ? std::sqrt(v) : 0.0;
    }
    return eig.vectors * s.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// Populations of sigma0 in the eigenbasis of H, and the eigenvalues.
struct EnergyPopulations {
    Eigensystem eig;
    ComplexMatrix sigma_eb;  // V^dagger sigma0 V
};

EnergyPopulations populations(const ComplexMatrix &h, const DensityMatrix &sigma0) {
    require_same_dim(static_cast<std::size_t>(h.rows()), sigma0.dimension(), "exact_ite");
    auto eig = hermitian_eig(h);
    ComplexMatrix s = eig.vectors.adjoint() * sigma0.matrix() * eig.vectors;
    return {std::move(eig), std::move(s)};
}

}  // namespace

SpectralData ground(const ComplexMatrix &h) {
    auto eig = hermitian_eig(h);
    ComplexVector v = eig.vectors.col(0);
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        // Ties are broken towards the lowest index.
        if (std::abs(v(k)) > best_mag + 1e-12) {
            best_mag = std::abs(v(k));
            best = k;
        }
    }
    v *= std::conj(v(best)) / std::abs(v(best));
    v(best) = std::abs(v(best));

    SpectralData out;
    out.ground_energy = eig.values(0);
    out.ground_vector = PureState::normalized(std::move(v));
    out.gap = eig.values.size() > 1 ? std::max(0.0, eig.values(1) - eig.values(0)) : 0.0;
    out.degenerate = eig.values.size() > 1 && out.gap < kDegeneracyTolerance;
    out.spectrum = std::move(eig.values);
    return out;
}

GroundSpace ground_space(const ComplexMatrix &h, double tolerance) {
    auto eig = hermitian_eig(h);
    const double e0 = eig.values(0);
    int rank = 0;
    while (rank < eig.values.size() && eig.values(rank) - e0 <= tolerance) {
        ++rank;
    }
    auto v = eig.vectors.leftCols(rank);
    return {v * v.adjoint(), rank};
}

DensityMatrix exact_ite(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("exact_ite: beta must be finite and non-negative");
    }
    require_state(sigma0, "exact_ite");
    if (beta == 0.0) {
        require_same_dim(static_cast<std::size_t>(h.rows()), sigma0.dimension(), "exact_ite");
        return sigma0;
    }
    auto [eig, s] = populations(h, sigma0);
    const double e0 = eig.values(0);
    const Eigen::Index d = eig.values.size();
    RealVector w(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        w(k) = std::exp(-beta * (eig.values(k) - e0));
    }
    ComplexMatrix evolved = w.cast<Complex>().asDiagonal() * s * w.cast<Complex>().asDiagonal();
    const double norm = evolved.trace().real();
    if (!(norm > std::numeric_limits<double>::min())) {
        throw ExtinctionError("exact_ite: normalization vanished");
    }
    ComplexMatrix out = eig.vectors * (evolved / norm) * eig.vectors.adjoint();
    return DensityMatrix(std::move(out));
}

double ite_log_norm(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("ite_log_norm: beta must be finite and non-negative");
    }
    auto [eig, s] = populations(h, sigma0);
    const double e0 = eig.values(0);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        acc += std::exp(-2.0 * beta * (eig.values(k) - e0)) * s(k, k).real();
    }
    if (!(acc > 0.0)) {
        throw ExtinctionError("ite_log_norm: normalization vanished");
    }
    return std::log(acc) - 2.0 * beta * e0;
}

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dim(a.dimension(), b.dimension(), "fidelity");
    require_state(a, "fidelity");
    require_state(b, "fidelity");
    // F = ||sqrt(a) sqrt(b)||_1^2, via singular values to avoid a second sqrt.
    ComplexMatrix prod = truncated_sqrt(a.matrix()) * truncated_sqrt(b.matrix());
    Eigen::JacobiSVD<ComplexMatrix> svd(prod);
    const double root = svd.singularValues().sum();
    return std::clamp(root * root, 0.0, 1.0);
}

double bures_distance(const DensityMatrix &a, const DensityMatrix &b) {
    const double f = fidelity(a, b);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(f))));
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    return 0.5 * trace_norm(a - b);
}

double energy(const ComplexMatrix &h, const DensityMatrix &sigma) {
    require_same_dim(static_cast<std::size_t>(h.rows()), sigma.dimension(), "energy");
    const Complex e = (h * sigma.matrix()).trace();
    if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real()))) {
        throw InvalidStateError("energy: expectation value is not real");
    }
    return e.real();
}

double projector_fidelity(const ComplexMatrix &projector, const DensityMatrix &sigma) {
    require_same_dim(static_cast<std::size_t>(projector.rows()), sigma.dimension(), "projector_fidelity");
    return std::clamp((projector * sigma.matrix()).trace().real(), 0.0, 1.0);
}

}  // namespace sbqs

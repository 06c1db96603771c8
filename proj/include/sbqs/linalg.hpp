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

// Dense complex linear algebra shared by every other module: Kronecker
// products, labelled tensor factors, partial traces, Hermitian spectral
// decomposition and matrix functions.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sbqs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest matrix dimension any constructor in this library will produce.
inline constexpr std::size_t kDefaultMaxDimension = std::size_t{1} << 14;

/// Tolerance for Hermiticity / PSD checks on density matrices.
inline constexpr double kStateTolerance = 1e-10;

struct Subsystem {
    std::string label;
    std::size_t dim = 0;
};

/// Ordered list of labelled tensor factors. The first subsystem is the most
/// significant one in the row-major basis ordering (i.e. `kron(first, rest)`).
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Subsystem> subsystems);

    /// `n` qubits labelled `<prefix>0 .. <prefix>{n-1}`.
    static RegisterLayout qubits(std::string_view prefix, std::size_t n);

    const std::vector<Subsystem> &subsystems() const {
        return subsystems_;
    }
    std::size_t size() const {
        return subsystems_.size();
    }
    std::size_t total_dimension() const;
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const;

    /// `this` followed by `other`; labels must stay unique.
    RegisterLayout concat(const RegisterLayout &other) const;

   private:
    std::vector<Subsystem> subsystems_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t max_dimension = kDefaultMaxDimension);

/// Reduced matrix on the `keep` subsystems. The kept factors appear in layout
/// order regardless of the order of `keep`.
ComplexMatrix partial_trace(const ComplexMatrix &m, const RegisterLayout &layout,
                            const std::vector<std::string> &keep);

/// Lifts `op`, acting on `targets` (in the given order, first target most
/// significant), to the full layout with identity on every other factor.
ComplexMatrix embed(const ComplexMatrix &op, const RegisterLayout &layout,
                    const std::vector<std::string> &targets);

/// Qubit-register special case of `embed`: `sites` index an `n`-qubit
/// register whose qubit 0 is the most significant.
ComplexMatrix embed_qubits(const ComplexMatrix &op, std::span<const int> sites, int n);

bool is_hermitian(const ComplexMatrix &m, double tol = kStateTolerance);

struct Eigensystem {
    RealVector values;      ///< ascending
    ComplexMatrix vectors;  ///< orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Inputs within tolerance are
/// symmetrized first; anything else throws InvalidStateError.
Eigensystem hermitian_eig(const ComplexMatrix &h);

/// V diag(f(lambda)) V^dagger. Throws DomainError if `f` yields a non-finite
/// value at any eigenvalue.
ComplexMatrix hermitian_func(const ComplexMatrix &h, const std::function<double(double)> &f);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; more negative ones raise DomainError.
ComplexMatrix psd_sqrt(const ComplexMatrix &h);

double operator_norm(const ComplexMatrix &m);
double frobenius_norm(const ComplexMatrix &m);
double trace_norm(const ComplexMatrix &m);

/// State vector. The norm is recorded rather than enforced.
class PureState {
   public:
    explicit PureState(ComplexVector amplitudes);

    /// Rescales to unit norm; throws DomainError for the zero vector.
    static PureState normalized(ComplexVector amplitudes);
    /// Computational basis state |index>.
    static PureState basis(std::size_t dim, std::size_t index);
    /// Uniform superposition over all basis states (|+>^n for qubits).
    static PureState uniform(std::size_t dim);

    std::size_t dimension() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    double norm() const {
        return norm_;
    }
    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm_ - 1.0) <= tol;
    }
    ComplexMatrix projector() const;

   private:
    ComplexVector amplitudes_;
    double norm_ = 0.0;
};

/// Hermitian matrix with a recorded trace. The trace is 1 for normalized states
/// and any positive value for the unnormalized intermediates of the protocol.
/// Construction checks squareness and Hermiticity (then symmetrizes);
/// positivity is checked on demand since it needs a diagonalization.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    /// Full state check: Hermitian, PSD within 1e-10 and unit trace within
    /// `trace_tol`. Throws InvalidStateError.
    static DensityMatrix checked_state(ComplexMatrix m, double trace_tol = 1e-9);

    std::size_t dimension() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    double trace() const {
        return trace_;
    }
    bool is_positive_semidefinite(double tol = kStateTolerance) const;
    bool is_normalized(double tol = 1e-10) const {
        return std::abs(trace_ - 1.0) <= tol;
    }

    /// Divides by the trace. Throws DomainError if the trace is not positive.
    DensityMatrix normalized() const;

   private:
    ComplexMatrix matrix_;
    double trace_ = 0.0;
};

}  // namespace sbqs

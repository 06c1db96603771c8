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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sbqs/errors.hpp"
#include "sbqs/hamiltonian.hpp"
#include "sbqs/linalg.hpp"

namespace sbqs {
namespace {

ComplexMatrix pauli(char c) {
    return pauli_matrix(c);
}

double max_abs(const ComplexMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

TEST(Kron, IdentityTimesIdentity) {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    EXPECT_LE(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)), 0.0);
}

TEST(Kron, XOnFirstQubit) {
    const ComplexMatrix m = kron(pauli('X'), ComplexMatrix::Identity(2, 2));
    // X on the most significant qubit maps |0b> <-> |1b>.
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(2, 0) = expected(3, 1) = expected(0, 2) = expected(1, 3) = 1.0;
    EXPECT_LE(max_abs(m - expected), 0.0);
}

TEST(Kron, ProjectorOntoZeroPlus) {
    const ComplexMatrix p0 = oracle::ket_bra(oracle::basis(2, 0), oracle::basis(2, 0));
    const ComplexMatrix pp = oracle::ket_bra(oracle::plus(), oracle::plus());
    const ComplexMatrix m = kron(p0, pp);
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(1) = 1.0 / std::sqrt(2.0);
    EXPECT_LE(max_abs(m - v * v.adjoint()), 1e-15);
    EXPECT_NEAR((m * m - m).norm(), 0.0, 1e-15);
}

TEST(Kron, CapacityCap) {
    const ComplexMatrix a = ComplexMatrix::Identity(64, 64);
    EXPECT_THROW(kron(a, a, 1024), CapacityError);
}

TEST(Kron, AssociativeOnRandomTriples) {
    oracle::Random rnd(1);
    for (int t = 0; t < 20; ++t) {
        const auto a = rnd.ginibre(2);
        const auto b = rnd.ginibre(3);
        const auto c = rnd.ginibre(2);
        EXPECT_LE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-12);
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    oracle::Random rnd(2);
    const auto a = rnd.ginibre(2);
    const auto b = rnd.ginibre(4);
    const RegisterLayout layout({{"A", 2}, {"B", 4}});
    EXPECT_LE(max_abs(partial_trace(kron(a, b), layout, {"A"}) - a * b.trace()), 1e-12);
    EXPECT_LE(max_abs(partial_trace(kron(a, b), layout, {"B"}) - b * a.trace()), 1e-12);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const auto layout = RegisterLayout::qubits("q", 2);
    const ComplexMatrix reduced = partial_trace(bell * bell.adjoint(), layout, {"q0"});
    EXPECT_LE(max_abs(reduced - 0.5 * ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, KeepAllIsIdentity) {
    oracle::Random rnd(3);
    const auto m = rnd.ginibre(8);
    const auto layout = RegisterLayout::qubits("q", 3);
    EXPECT_LE(max_abs(partial_trace(m, layout, {"q0", "q1", "q2"}) - m), 0.0);
}

TEST(PartialTrace, MatchesIndexOracleAndPreservesTrace) {
    oracle::Random rnd(4);
    const auto layout = RegisterLayout::qubits("q", 3);
    for (int t = 0; t < 20; ++t) {
        const auto m = rnd.ginibre(8);
        const ComplexMatrix lib = partial_trace(m, layout, {"q0", "q2"});
        EXPECT_LE(max_abs(lib - oracle::trace_out(m, 3, {1})), 1e-12);
        EXPECT_LE(std::abs(lib.trace() - m.trace()), 1e-10);
    }
}

TEST(PartialTrace, Errors) {
    const auto layout = RegisterLayout::qubits("q", 2);
    EXPECT_THROW(partial_trace(ComplexMatrix::Identity(4, 4), layout, {"nope"}), DimensionError);
    EXPECT_THROW(partial_trace(ComplexMatrix::Identity(8, 8), layout, {"q0"}), DimensionError);
}

TEST(Layout, LabelsMustBeUnique) {
    EXPECT_THROW(RegisterLayout({{"a", 2}, {"a", 2}}), DimensionError);
    const auto l = RegisterLayout::qubits("q", 2).concat(RegisterLayout({{"c", 2}}));
    EXPECT_EQ(l.total_dimension(), 8u);
    EXPECT_EQ(l.index_of("c"), 2u);
    EXPECT_THROW(l.concat(RegisterLayout({{"c", 2}})), DimensionError);
}

TEST(Embed, MatchesKronPadding) {
    oracle::Random rnd(5);
    const auto op = rnd.ginibre(2);
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const int site[] = {1};
    EXPECT_LE(max_abs(embed_qubits(op, site, 3) - oracle::kron(oracle::kron(i2, op), i2)), 1e-15);
    // Reversed two-site support equals conjugation by SWAP.
    const auto op2 = rnd.ginibre(4);
    const int rev[] = {1, 0};
    const ComplexMatrix s = oracle::swap_qubits(2, {0}, {1});
    EXPECT_LE(max_abs(embed_qubits(op2, rev, 2) - s * op2 * s), 1e-15);
}

TEST(HermitianEig, PauliSpectra) {
    const auto z = hermitian_eig(pauli('Z'));
    EXPECT_NEAR(z.values(0), -1.0, 1e-15);
    EXPECT_NEAR(z.values(1), 1.0, 1e-15);
    const auto x = hermitian_eig(pauli('X'));
    EXPECT_NEAR(x.values(0), -1.0, 1e-15);
    EXPECT_NEAR(x.values(1), 1.0, 1e-15);
    // Eigenvectors |-> and |+> up to phase.
    const ComplexVector minus = (oracle::basis(2, 0) - oracle::basis(2, 1)) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(minus.dot(x.vectors.col(0))), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(oracle::plus().dot(x.vectors.col(1))), 1.0, 1e-12);
}

TEST(HermitianEig, IsingPairSpectrum) {
    const auto h = densify(build_ising({2, 1.0, 0.0, Boundary::open}));
    const auto e = hermitian_eig(h);
    EXPECT_NEAR(e.values(0), -1.0, 1e-12);
    EXPECT_NEAR(e.values(1), -1.0, 1e-12);
    EXPECT_NEAR(e.values(2), 1.0, 1e-12);
    EXPECT_NEAR(e.values(3), 1.0, 1e-12);
}

TEST(HermitianEig, RandomReconstruction) {
    oracle::Random rnd(6);
    for (int t = 0; t < 20; ++t) {
        const auto h = rnd.hermitian(8);
        const auto e = hermitian_eig(h);
        const ComplexMatrix back = e.vectors * e.values.cast<std::complex<double>>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LE((back - h).norm(), 1e-9 * h.norm());
        EXPECT_LE(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(8, 8)), 1e-10);
        for (Eigen::Index k = 1; k < e.values.size(); ++k) {
            EXPECT_LE(e.values(k - 1), e.values(k));
        }
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(hermitian_eig(m), InvalidStateError);
    EXPECT_THROW(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(HermitianFunc, Examples) {
    const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    EXPECT_LE(max_abs(hermitian_func(zero, [](double x) { return std::exp(-2.0 * x); }) -
                      ComplexMatrix::Identity(2, 2)),
              1e-15);
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    EXPECT_LE(max_abs(psd_sqrt(half) - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)), 1e-15);
    const ComplexMatrix ez = hermitian_func(pauli('Z'), [](double x) { return std::exp(-x); });
    EXPECT_NEAR(ez(0, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(ez(1, 1).real(), std::exp(1.0), 1e-14);
    EXPECT_LE(std::abs(ez(0, 1)), 1e-15);
}

TEST(HermitianFunc, DomainErrors) {
    EXPECT_THROW(psd_sqrt(-pauli('Z')), DomainError);
    ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
    tiny(0, 0) = -1e-11;
    tiny(1, 1) = 1.0;
    EXPECT_NEAR(psd_sqrt(tiny)(0, 0).real(), 0.0, 1e-15);
    EXPECT_THROW(hermitian_func(pauli('Z'), [](double x) { return std::log(x); }), DomainError);
}

TEST(HermitianFunc, ExpMatchesPowerSeries) {
    oracle::Random rnd(7);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix h = rnd.hermitian(4);
        h /= operator_norm(h);
        const ComplexMatrix lib = hermitian_func(h, [](double x) { return std::exp(x); });
        // Truncation after 25 terms is below 1/26! for ||h|| <= 1.
        EXPECT_LE(max_abs(lib - oracle::exp_series(h, 25)), 1e-12);
    }
}

TEST(Norms, Examples) {
    EXPECT_NEAR(operator_norm(pauli('Z')), 1.0, 1e-15);
    EXPECT_NEAR(frobenius_norm(pauli('Z')), std::sqrt(2.0), 1e-15);
    const auto h = densify(build_ising({2, 1.0, 1.0, Boundary::open}));
    const auto e = hermitian_eig(h);
    EXPECT_NEAR(frobenius_norm(h), std::sqrt(e.values.squaredNorm()), 1e-12);
    EXPECT_NEAR(trace_norm(pauli('Z')), 2.0, 1e-15);
}

TEST(PureState, Constructors) {
    const auto u = PureState::uniform(4);
    EXPECT_TRUE(u.is_normalized());
    EXPECT_NEAR(std::abs(u.amplitudes()(3)), 0.5, 1e-15);
    const auto b = PureState::basis(4, 2);
    EXPECT_EQ(b.amplitudes()(2), std::complex<double>(1.0));
    EXPECT_THROW(PureState::basis(4, 4), DimensionError);
    EXPECT_THROW(PureState::normalized(ComplexVector::Zero(2)), DomainError);
    ComplexVector v(2);
    v << 3.0, 4.0;
    const PureState raw(v);
    EXPECT_NEAR(raw.norm(), 5.0, 1e-15);
    EXPECT_FALSE(raw.is_normalized());
}

TEST(DensityMatrix, Invariants) {
    const auto rho = DensityMatrix::from_pure(PureState::uniform(2));
    EXPECT_TRUE(rho.is_normalized());
    EXPECT_TRUE(rho.is_positive_semidefinite());
    EXPECT_THROW(DensityMatrix::checked_state(pauli('Z')), InvalidStateError);
    EXPECT_THROW(DensityMatrix::checked_state(2.0 * rho.matrix()), InvalidStateError);
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    EXPECT_THROW(DensityMatrix{bad}, InvalidStateError);
    ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
    nan(0, 0) = std::nan("");
    EXPECT_THROW(DensityMatrix{nan}, InvalidStateError);
    const DensityMatrix unnorm(3.0 * rho.matrix());
    EXPECT_NEAR(unnorm.trace(), 3.0, 1e-15);
    EXPECT_TRUE(unnorm.normalized().is_normalized());
    EXPECT_NEAR(DensityMatrix::maximally_mixed(4).matrix()(1, 1).real(), 0.25, 1e-15);
}

}  // namespace
}  // namespace sbqs

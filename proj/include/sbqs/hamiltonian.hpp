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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sbqs/linalg.hpp"

namespace sbqs {

/// Largest qubit count any dense Hamiltonian is built for.
inline constexpr int kMaxQubits = 12;

struct PauliString {
    std::string letters;  ///< one of I, X, Y, Z per site; site 0 first
    double coeff = 0.0;
};

/// sum_k coeff_k P_k + identity_offset * I on `n` qubits.
struct PauliSum {
    int n = 0;
    std::vector<PauliString> terms;
    double identity_offset = 0.0;

    /// Throws DimensionError / DomainError on malformed terms.
    void validate() const;
};

enum class Boundary { open, periodic };

struct IsingParams {
    int n = 0;
    double J = 0.0;
    double B = 0.0;
    Boundary boundary = Boundary::open;

    /// n >= 2, periodic needs n >= 3, couplings finite. Throws DomainError.
    void validate() const;
};

/// One resource state rho with its weight h, acting on `support` (ordered
/// sites; the first support site is the most significant factor of rho).
struct ResourceTerm {
    double weight = 0.0;
    DensityMatrix rho;
    std::vector<int> support;
    std::string label;
};

enum class DecompositionKind { ising_local, pauli_generic };

/// H = sum_i h_i embed(rho_i) + identity_offset * I.
struct ResourceDecomposition {
    int n = 0;
    std::vector<ResourceTerm> terms;
    double identity_offset = 0.0;
    DecompositionKind provenance = DecompositionKind::pauli_generic;

    double max_abs_weight() const;
};

std::string_view to_string(Boundary b);
std::string_view to_string(DecompositionKind k);

/// Nearest-neighbour bonds (i, i+1), plus (n-1, 0) for periodic chains.
std::vector<std::pair<int, int>> ising_bonds(const IsingParams &p);

/// -J sum X_i X_{i+1} - B sum Z_i. Zero-coefficient terms are omitted.
PauliSum build_ising(const IsingParams &p);

ComplexMatrix pauli_matrix(char letter);
ComplexMatrix pauli_string_matrix(std::string_view letters);

struct ShiftedOperator {
    ComplexMatrix op;
    double shift = 0.0;
};

struct ShiftedPauliSum {
    PauliSum op;
    double shift = 0.0;
};

/// H + ||H||_2 I with the Schatten-2 (Frobenius) norm, which dominates |E_0|.
ShiftedOperator shift_to_positive(const ComplexMatrix &h);
ShiftedPauliSum shift_to_positive(const PauliSum &h);

/// Every Pauli string c P becomes the full-register state (I + sign(c) P)/2^n
/// with weight |c| 2^n; the remainder -|c| goes to the identity offset.
/// Identity strings are folded into the offset.
ResourceDecomposition decompose_pauli_generic(const PauliSum &h);

/// Site-local decomposition of the transverse-field Ising chain into
/// |++><++| bond states, |+><+| and |0><0| single-site states. Weights are
/// signed: -4J per bond, +2J per bond incident on a site, -2B per site.
ResourceDecomposition decompose_ising_local(const IsingParams &p);

ComplexMatrix densify(const PauliSum &h);
ComplexMatrix densify(const ResourceDecomposition &d);

/// sum_i h_i rho_i without the identity offset: the operator whose imaginary
/// time evolution the protocol actually implements.
ComplexMatrix protocol_hamiltonian(const ResourceDecomposition &d);

}  // namespace sbqs

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

#include "sbqs/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "sbqs/errors.hpp"

namespace sbqs {

namespace {

void require_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw CapacityError("register of " + std::to_string(n) + " qubits is outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
}

ComplexMatrix plus_projector() {
    return ComplexMatrix::Constant(2, 2, 0.5);
}

ComplexMatrix zero_projector() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
}

}  // namespace

void PauliSum::validate() const {
    require_qubits(n);
    if (!std::isfinite(identity_offset)) {
        throw DomainError("PauliSum: non-finite identity offset");
    }
    for (const auto &t : terms) {
        if (static_cast<int>(t.letters.size()) != n) {
            throw DimensionError("PauliSum: string '" + t.letters + "' does not have length " +
                                 std::to_string(n));
        }
        for (char c : t.letters) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw DomainError(std::string("PauliSum: invalid Pauli letter '") + c + "'");
            }
        }
        if (!std::isfinite(t.coeff)) {
            throw DomainError("PauliSum: non-finite coefficient for '" + t.letters + "'");
        }
    }
}

void IsingParams::validate() const {
    if (n < 2) {
        throw DomainError("Ising chain needs n >= 2");
    }
    if (boundary == Boundary::periodic && n < 3) {
        throw DomainError("periodic Ising chain needs n >= 3");
    }
    require_qubits(n);
    if (!std::isfinite(J) || !std::isfinite(B)) {
        throw DomainError("Ising couplings must be finite");
    }
}

double ResourceDecomposition::max_abs_weight() const {
    double h = 0.0;
    for (const auto &t : terms) {
        h = std::max(h, std::abs(t.weight));
    }
    return h;
}

std::string_view to_string(Boundary b) {
    return b == Boundary::open ? "open" : "periodic";
}

std::string_view to_string(DecompositionKind k) {
    return k == DecompositionKind::ising_local ? "ising-local" : "pauli-generic";
}

std::vector<std::pair<int, int>> ising_bonds(const IsingParams &p) {
    p.validate();
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < p.n; ++i) {
        bonds.emplace_back(i, i + 1);
    }
    if (p.boundary == Boundary::periodic) {
        bonds.emplace_back(p.n - 1, 0);
    }
    return bonds;
}

PauliSum build_ising(const IsingParams &p) {
    PauliSum h{p.n, {}, 0.0};
    if (p.J != 0.0) {
        for (auto [i, j] : ising_bonds(p)) {
            std::string s(p.n, 'I');
            s[i] = 'X';
            s[j] = 'X';
            h.terms.push_back({std::move(s), -p.J});
        }
    } else {
        p.validate();
    }
    if (p.B != 0.0) {
        for (int i = 0; i < p.n; ++i) {
            std::string s(p.n, 'I');
            s[i] = 'Z';
            h.terms.push_back({std::move(s), -p.B});
        }
    }
    return h;
}

ComplexMatrix pauli_matrix(char letter) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (letter) {
        case 'I':
            m(0, 0) = m(1, 1) = 1.0;
            break;
        case 'X':
            m(0, 1) = m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = Complex(0, -1);
            m(1, 0) = Complex(0, 1);
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw DomainError(std::string("invalid Pauli letter '") + letter + "'");
    }
    return m;
}

ComplexMatrix pauli_string_matrix(std::string_view letters) {
    const int n = static_cast<int>(letters.size());
    require_qubits(n);
    const std::size_t dim = std::size_t{1} << n;
    std::size_t flip = 0;
    for (int k = 0; k < n; ++k) {
        char c = letters[k];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw DomainError(std::string("invalid Pauli letter '") + c + "'");
        }
        if (c == 'X' || c == 'Y') {
            flip |= std::size_t{1} << (n - 1 - k);
        }
    }
    // P|b> = phase(b) |b xor flip>, a signed permutation.
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        Complex phase = 1.0;
        for (int k = 0; k < n; ++k) {
            const bool bit = (b >> (n - 1 - k)) & 1U;
            switch (letters[k]) {
                case 'Z':
                    if (bit) phase = -phase;
                    break;
                case 'Y':
                    phase *= bit ? Complex(0, -1) : Complex(0, 1);
                    break;
                default:
                    break;
            }
        }
        m(b ^ flip, b) = phase;
    }
    return m;
}

ShiftedOperator shift_to_positive(const ComplexMatrix &h) {
    if (!is_hermitian(h)) {
        throw InvalidStateError("shift_to_positive: operator is not Hermitian");
    }
    const double shift = frobenius_norm(h);
    ComplexMatrix out = h;
    out.diagonal().array() += shift;
    return {std::move(out), shift};
}

ShiftedPauliSum shift_to_positive(const PauliSum &h) {
    const double shift = frobenius_norm(densify(h));
    PauliSum out = h;
    out.identity_offset += shift;
    return {std::move(out), shift};
}

ResourceDecomposition decompose_pauli_generic(const PauliSum &h) {
    h.validate();
    const double dim = std::ldexp(1.0, h.n);
    ResourceDecomposition d;
    d.n = h.n;
    d.identity_offset = h.identity_offset;
    d.provenance = DecompositionKind::pauli_generic;
    const ComplexMatrix id = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<int> all_sites(h.n);
    for (int k = 0; k < h.n; ++k) {
        all_sites[k] = k;
    }
    for (const auto &t : h.terms) {
        if (t.letters.find_first_not_of('I') == std::string::npos) {
            d.identity_offset += t.coeff;
            continue;
        }
        if (t.coeff == 0.0) {
            continue;
        }
        // c P = |c| 2^n (I + sign(c) P)/2^n - |c| I
        const double sign = t.coeff > 0.0 ? 1.0 : -1.0;
        ComplexMatrix rho = (id + sign * pauli_string_matrix(t.letters)) / dim;
        std::string label = (sign > 0 ? "(I+" : "(I-") + t.letters + ")/" + std::to_string(static_cast<long>(dim));
        d.terms.push_back({std::abs(t.coeff) * dim, DensityMatrix(std::move(rho)), all_sites, std::move(label)});
        d.identity_offset -= std::abs(t.coeff);
    }
    return d;
}

ResourceDecomposition decompose_ising_local(const IsingParams &p) {
    p.validate();
    ResourceDecomposition d;
    d.n = p.n;
    d.provenance = DecompositionKind::ising_local;
    const auto bonds = ising_bonds(p);

    // X_i X_j = 4 rho_X(i) rho_X(j) - 2 rho_X(i) - 2 rho_X(j) + I
    // Z_i     = 2 rho_Z(i) - I
    std::vector<int> degree(p.n, 0);
    if (p.J != 0.0) {
        const ComplexMatrix bond_rho = kron(plus_projector(), plus_projector());
        for (auto [i, j] : bonds) {
            d.terms.push_back({-4.0 * p.J, DensityMatrix(bond_rho), {i, j},
                               "XX(" + std::to_string(i) + "," + std::to_string(j) + ")"});
            ++degree[i];
            ++degree[j];
            d.identity_offset -= p.J;
        }
        for (int i = 0; i < p.n; ++i) {
            if (degree[i] == 0) {
                continue;
            }
            d.terms.push_back({2.0 * p.J * degree[i], DensityMatrix(plus_projector()), {i},
                               "X(" + std::to_string(i) + ")"});
        }
    }
    if (p.B != 0.0) {
        for (int i = 0; i < p.n; ++i) {
            d.terms.push_back({-2.0 * p.B, DensityMatrix(zero_projector()), {i}, "Z(" + std::to_string(i) + ")"});
            d.identity_offset += p.B;
        }
    }
    return d;
}

ComplexMatrix densify(const PauliSum &h) {
    h.validate();
    const std::size_t dim = std::size_t{1} << h.n;
    ComplexMatrix out = ComplexMatrix::Identity(dim, dim) * h.identity_offset;
    for (const auto &t : h.terms) {
        if (t.coeff != 0.0) {
            out += t.coeff * pauli_string_matrix(t.letters);
        }
    }
    return out;
}

ComplexMatrix protocol_hamiltonian(const ResourceDecomposition &d) {
    require_qubits(d.n);
    const std::size_t dim = std::size_t{1} << d.n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto &t : d.terms) {
        out += t.weight * embed_qubits(t.rho.matrix(), t.support, d.n);
    }
    return out;
}

ComplexMatrix densify(const ResourceDecomposition &d) {
    ComplexMatrix out = protocol_hamiltonian(d);
    out.diagonal().array() += d.identity_offset;
    return out;
}

}  // namespace sbqs

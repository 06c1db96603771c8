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

#include "sbqs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sbqs/errors.hpp"

namespace sbqs {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        std::ostringstream ss;
        ss << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(ss.str());
    }
}

// Full-register index of every (target digit tuple, rest digit tuple) pair.
// Entry [a * rest_dim + r] is the full index whose target subsystems (in the
// given order) encode `a` and whose remaining subsystems (in layout order)
// encode `r`.
struct IndexTable {
    std::size_t target_dim = 1;
    std::size_t rest_dim = 1;
    std::vector<std::size_t> full;

    std::size_t at(std::size_t a, std::size_t r) const {
        return full[a * rest_dim + r];
    }
};

IndexTable make_index_table(const RegisterLayout &layout, const std::vector<std::size_t> &targets) {
    const auto &subs = layout.subsystems();
    std::vector<std::size_t> stride(subs.size(), 1);
    for (std::size_t k = subs.size(); k-- > 1;) {
        stride[k - 1] = stride[k] * subs[k].dim;
    }
    std::vector<bool> is_target(subs.size(), false);
    for (auto t : targets) {
        is_target[t] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (!is_target[k]) {
            rest.push_back(k);
        }
    }

    IndexTable table;
    for (auto t : targets) {
        table.target_dim *= subs[t].dim;
    }
    for (auto k : rest) {
        table.rest_dim *= subs[k].dim;
    }

    // Offset contributed by each local index, computed digit by digit.
    auto offsets = [&](const std::vector<std::size_t> &positions, std::size_t count) {
        std::vector<std::size_t> out(count, 0);
        for (std::size_t v = 0; v < count; ++v) {
            std::size_t rem = v;
            std::size_t off = 0;
            for (std::size_t p = positions.size(); p-- > 0;) {
                std::size_t d = subs[positions[p]].dim;
                off += (rem % d) * stride[positions[p]];
                rem /= d;
            }
            out[v] = off;
        }
        return out;
    };
    auto target_off = offsets(targets, table.target_dim);
    auto rest_off = offsets(rest, table.rest_dim);

    table.full.resize(table.target_dim * table.rest_dim);
    for (std::size_t a = 0; a < table.target_dim; ++a) {
        for (std::size_t r = 0; r < table.rest_dim; ++r) {
            table.full[a * table.rest_dim + r] = target_off[a] + rest_off[r];
        }
    }
    return table;
}

std::vector<std::size_t> resolve(const RegisterLayout &layout, const std::vector<std::string> &labels) {
    std::vector<std::size_t> out;
    std::set<std::size_t> seen;
    out.reserve(labels.size());
    for (const auto &label : labels) {
        auto k = layout.index_of(label);
        if (!seen.insert(k).second) {
            throw DimensionError("duplicate subsystem label: " + label);
        }
        out.push_back(k);
    }
    return out;
}

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
    std::set<std::string> labels;
    for (const auto &s : subsystems_) {
        if (s.dim == 0) {
            throw DimensionError("subsystem '" + s.label + "' has dimension 0");
        }
        if (!labels.insert(s.label).second) {
            throw DimensionError("duplicate subsystem label: " + s.label);
        }
    }
}

RegisterLayout RegisterLayout::qubits(std::string_view prefix, std::size_t n) {
    std::vector<Subsystem> subs;
    subs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        subs.push_back({std::string(prefix) + std::to_string(k), 2});
    }
    return RegisterLayout(std::move(subs));
}

std::size_t RegisterLayout::total_dimension() const {
    std::size_t d = 1;
    for (const auto &s : subsystems_) {
        d *= s.dim;
    }
    return d;
}

std::size_t RegisterLayout::index_of(std::string_view label) const {
    for (std::size_t k = 0; k < subsystems_.size(); ++k) {
        if (subsystems_[k].label == label) {
            return k;
        }
    }
    throw DimensionError("unknown subsystem label: " + std::string(label));
}

bool RegisterLayout::contains(std::string_view label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.label == label; });
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &other) const {
    auto subs = subsystems_;
    subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
    return RegisterLayout(std::move(subs));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t max_dimension) {
    const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (rows > max_dimension || cols > max_dimension) {
        std::ostringstream ss;
        ss << "kron: result " << rows << "x" << cols << " exceeds capacity " << max_dimension;
        throw CapacityError(ss.str());
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const RegisterLayout &layout,
                            const std::vector<std::string> &keep) {
    require_square(m, "partial_trace");
    if (static_cast<std::size_t>(m.rows()) != layout.total_dimension()) {
        std::ostringstream ss;
        ss << "partial_trace: matrix dimension " << m.rows() << " does not match layout dimension "
           << layout.total_dimension();
        throw DimensionError(ss.str());
    }
    auto kept = resolve(layout, keep);
    std::sort(kept.begin(), kept.end());
    auto table = make_index_table(layout, kept);

    ComplexMatrix out = ComplexMatrix::Zero(table.target_dim, table.target_dim);
    for (std::size_t a = 0; a < table.target_dim; ++a) {
        for (std::size_t b = 0; b < table.target_dim; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < table.rest_dim; ++r) {
                acc += m(table.at(a, r), table.at(b, r));
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix embed(const ComplexMatrix &op, const RegisterLayout &layout,
                    const std::vector<std::string> &targets) {
    require_square(op, "embed");
    auto idx = resolve(layout, targets);
    auto table = make_index_table(layout, idx);
    if (static_cast<std::size_t>(op.rows()) != table.target_dim) {
        std::ostringstream ss;
        ss << "embed: operator dimension " << op.rows() << " does not match target dimension "
           << table.target_dim;
        throw DimensionError(ss.str());
    }
    const auto total = layout.total_dimension();
    if (total > kDefaultMaxDimension) {
        throw CapacityError("embed: layout dimension " + std::to_string(total) + " exceeds capacity");
    }
    ComplexMatrix out = ComplexMatrix::Zero(total, total);
    for (std::size_t a = 0; a < table.target_dim; ++a) {
        for (std::size_t b = 0; b < table.target_dim; ++b) {
            const Complex v = op(a, b);
            if (v == Complex{}) {
                continue;
            }
            for (std::size_t r = 0; r < table.rest_dim; ++r) {
                out(table.at(a, r), table.at(b, r)) = v;
            }
        }
    }
    return out;
}

ComplexMatrix embed_qubits(const ComplexMatrix &op, std::span<const int> sites, int n) {
    if (n < 0) {
        throw DimensionError("embed_qubits: negative register size");
    }
    auto layout = RegisterLayout::qubits("q", static_cast<std::size_t>(n));
    std::vector<std::string> labels;
    labels.reserve(sites.size());
    for (int s : sites) {
        if (s < 0 || s >= n) {
            throw DimensionError("embed_qubits: site " + std::to_string(s) + " outside register of " +
                                 std::to_string(n));
        }
        labels.push_back("q" + std::to_string(s));
    }
    return embed(op, layout, labels);
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.adjoint()) <= tol * scale;
}

Eigensystem hermitian_eig(const ComplexMatrix &h) {
    require_square(h, "hermitian_eig");
    if (!is_hermitian(h)) {
        throw InvalidStateError("hermitian_eig: matrix is not Hermitian within tolerance");
    }
    ComplexMatrix sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw DomainError("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix hermitian_func(const ComplexMatrix &h, const std::function<double(double)> &f) {
    auto eig = hermitian_eig(h);
    RealVector fv(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        fv(k) = f(eig.values(k));
        if (!std::isfinite(fv(k))) {
            std::ostringstream ss;
            ss << "hermitian_func: function undefined at eigenvalue " << eig.values(k);
            throw DomainError(ss.str());
        }
    }
    return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &h) {
    return hermitian_func(h, [](double x) {
        if (x >= 0.0) {
            return std::sqrt(x);
        }
        if (x >= -kStateTolerance) {
            return 0.0;
        }
        return std::numeric_limits<double>::quiet_NaN();
    });
}

double operator_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

double frobenius_norm(const ComplexMatrix &m) {
    return m.norm();
}

double trace_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    if (is_hermitian(m, 1e-13)) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((m + m.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().sum();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)), norm_(amplitudes_.norm()) {
    if (!amplitudes_.allFinite()) {
        throw DomainError("PureState: non-finite amplitude");
    }
}

PureState PureState::normalized(ComplexVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("PureState: cannot normalize a zero or non-finite vector");
    }
    return PureState(amplitudes / n);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("PureState::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::uniform(std::size_t dim) {
    if (dim == 0) {
        throw DimensionError("PureState::uniform: zero dimension");
    }
    return PureState(ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

ComplexMatrix PureState::projector() const {
    return amplitudes_ * amplitudes_.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) {
    require_square(m, "DensityMatrix");
    if (!m.allFinite()) {
        throw InvalidStateError("DensityMatrix: non-finite entry");
    }
    if (!is_hermitian(m)) {
        throw InvalidStateError("DensityMatrix: matrix is not Hermitian within tolerance");
    }
    matrix_ = (m + m.adjoint()) * 0.5;
    trace_ = matrix_.trace().real();
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::checked_state(ComplexMatrix m, double trace_tol) {
    DensityMatrix rho(std::move(m));
    if (std::abs(rho.trace() - 1.0) > trace_tol) {
        std::ostringstream ss;
        ss << "DensityMatrix: trace " << rho.trace() << " is not 1";
        throw InvalidStateError(ss.str());
    }
    if (!rho.is_positive_semidefinite()) {
        throw InvalidStateError("DensityMatrix: matrix has a negative eigenvalue");
    }
    return rho;
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().size() == 0 || solver.eigenvalues()(0) >= -tol;
}

DensityMatrix DensityMatrix::normalized() const {
    if (!(trace_ > 0.0)) {
        throw DomainError("DensityMatrix: cannot normalize a state with non-positive trace");
    }
    return DensityMatrix(matrix_ / trace_);
}

}  // namespace sbqs

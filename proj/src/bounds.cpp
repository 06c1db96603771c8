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

#include "sbqs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sbqs/errors.hpp"
#include "sbqs/oracle.hpp"

namespace sbqs {

namespace {

void require_steps(int steps) {
    if (steps < 1) {
        throw DomainError("bounds: N must be >= 1");
    }
}

void require_gap_and_f0(double gap, double f0) {
    if (!(gap >= 0.0)) {
        throw DomainError("bounds: gap must be non-negative");
    }
    if (!(f0 > 0.0 && f0 <= 1.0)) {
        std::ostringstream ss;
        ss << "bounds: initial fidelity " << f0 << " outside (0, 1]; bound undefined";
        throw DomainError(ss.str());
    }
}

// (1 - F0)(4 - eps^2) / (F0 eps^2)
double log_argument(double gap, double f0, double epsilon) {
    if (!(gap > 0.0)) {
        throw DomainError("bounds: degenerate gap, beta* is unbounded");
    }
    if (!(f0 > 0.0 && f0 < 1.0)) {
        throw DomainError("bounds: beta* needs F0 strictly inside (0, 1)");
    }
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        throw DomainError("bounds: target error must lie in (0, 2)");
    }
    return (1.0 - f0) * (4.0 - epsilon * epsilon) / (f0 * epsilon * epsilon);
}

double tolerance_for(double rhs) {
    return 1e-12 * std::max(1.0, std::abs(rhs));
}

ComplexMatrix ordered_product(std::span<const ComplexMatrix> ops) {
    ComplexMatrix acc = ComplexMatrix::Identity(ops.front().rows(), ops.front().cols());
    for (const auto &u : ops) {
        acc = u * acc;
    }
    return acc;
}

bool is_unitary(const ComplexMatrix &u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() <= 1e-10;
}

}  // namespace

double trotter_error(std::size_t terms, double beta, double h, int steps) {
    require_steps(steps);
    const double l = static_cast<double>(terms);
    return l * l * beta * beta * h * h / steps;
}

double sim_distance_bound(std::size_t terms, double beta, double h, int steps) {
    return 2.0 * trotter_error(terms, beta, h, steps);
}

double fidelity_lower_bound(double beta, double gap, double f0, std::size_t dim, FidelityBoundVariant variant) {
    require_gap_and_f0(gap, f0);
    if (dim < 2) {
        throw DomainError("bounds: dimension must be >= 2");
    }
    const double decay = std::exp(-2.0 * beta * gap);
    if (variant == FidelityBoundVariant::main) {
        return 1.0 / (1.0 + static_cast<double>(dim) * decay / f0);
    }
    return 1.0 / (1.0 + decay * (1.0 - f0) / f0);
}

double distance_upper_bound(double beta, double gap, double f0) {
    const double f = fidelity_lower_bound(beta, gap, f0, 2, FidelityBoundVariant::sm);
    return std::sqrt(std::max(0.0, 1.0 - f));
}

ErrorBudget error_budget(std::size_t terms, double beta, double h, int steps, double gap, double f0) {
    ErrorBudget b;
    b.simulation = sim_distance_bound(terms, beta, h, steps);
    b.ground = distance_upper_bound(beta, gap, f0);
    b.total = b.simulation + b.ground;
    return b;
}

double beta_star(double gap, double f0, double epsilon) {
    const double arg = log_argument(gap, f0, epsilon);
    return std::max(0.0, std::log(arg) / (2.0 * gap));
}

double n_star(double norm_h, double gap, double f0, double epsilon) {
    const double log_term = std::max(0.0, std::log(log_argument(gap, f0, epsilon)));
    return norm_h * norm_h / (epsilon * gap * gap) * log_term * log_term;
}

ProbabilityEstimate chained_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                        double steps, double log2_factor_per_step) {
    const double log_p = ite_log_norm(h, sigma0, beta) - steps * log2_factor_per_step * std::numbers::ln2;
    ProbabilityEstimate out;
    out.log10_value = log_p / std::numbers::ln10;
    out.clamped = log_p > 0.0;
    out.value = out.clamped ? 1.0 : std::exp(log_p);
    return out;
}

ProbabilityEstimate p_star(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta_star_value,
                           double n_star_value, std::size_t terms) {
    return chained_probability(h, sigma0, beta_star_value, std::ceil(n_star_value), static_cast<double>(terms));
}

ProbabilityEstimate strategyA_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                          int steps, std::size_t terms) {
    require_steps(steps);
    return chained_probability(h, sigma0, beta, steps, static_cast<double>(terms));
}

ProbabilityEstimate strategyB_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                          int steps, std::size_t terms) {
    require_steps(steps);
    return chained_probability(h, sigma0, beta, steps, std::log2(static_cast<double>(terms) + 1.0));
}

ProbabilityEstimate strategyB_local_probability(const ComplexMatrix &h, const DensityMatrix &sigma0,
                                                double beta, int steps, std::size_t terms, bool alternative) {
    require_steps(steps);
    return chained_probability(h, sigma0, beta, steps, static_cast<double>(terms) + (alternative ? 1.0 : 0.0));
}

ProductErrorReport product_error_predicates(std::span<const ComplexMatrix> operators,
                                            std::span<const ComplexMatrix> approximants) {
    if (operators.size() != approximants.size() || operators.empty()) {
        throw DimensionError("product_error_predicates: need two non-empty lists of equal length");
    }
    ProductErrorReport r;
    r.factors = operators.size();
    r.all_unitary = true;
    double error_sum = 0.0;
    for (std::size_t k = 0; k < operators.size(); ++k) {
        const auto &u = operators[k];
        const auto &v = approximants[k];
        if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != operators[0].rows() || u.rows() != u.cols()) {
            throw DimensionError("product_error_predicates: operator dimensions differ");
        }
        const double e = operator_norm(u - v);
        error_sum += e;
        r.max_error = std::max(r.max_error, e);
        r.max_norm = std::max({r.max_norm, operator_norm(u), operator_norm(v)});
        r.all_unitary = r.all_unitary && is_unitary(u) && is_unitary(v);
    }
    const double lhs = operator_norm(ordered_product(operators) - ordered_product(approximants));
    if (r.all_unitary) {
        r.unitary_chain = InequalityCheck{lhs, error_sum, lhs <= error_sum + tolerance_for(error_sum)};
    }
    const double k = static_cast<double>(r.factors);
    const double rhs = k * std::pow(r.max_norm, k - 1.0) * r.max_error;
    r.general_chain = InequalityCheck{lhs, rhs, lhs <= rhs + tolerance_for(rhs)};
    return r;
}

InequalityCheck expansion_error_predicate(std::span<const ComplexMatrix> operators,
                                          std::span<const double> deltas) {
    if (operators.size() != deltas.size() || operators.empty()) {
        throw DimensionError("expansion_error_predicate: need equal, non-empty operator and delta lists");
    }
    const Eigen::Index d = operators[0].rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexMatrix product = id;
    ComplexMatrix linear = id;
    double max_delta = 0.0;
    double max_norm = 0.0;
    for (std::size_t i = 0; i < operators.size(); ++i) {
        if (operators[i].rows() != d || operators[i].cols() != d) {
            throw DimensionError("expansion_error_predicate: operator dimensions differ");
        }
        product = product * (id - deltas[i] * operators[i]);
        linear -= deltas[i] * operators[i];
        max_delta = std::max(max_delta, std::abs(deltas[i]));
        max_norm = std::max(max_norm, operator_norm(operators[i]));
    }
    const double n = static_cast<double>(operators.size());
    const double lhs = operator_norm(product - linear);
    const double rhs = n * (n - 1.0) / 2.0 * max_delta * max_delta * max_norm * max_norm;
    return {lhs, rhs, lhs <= rhs + tolerance_for(rhs)};
}

BoundsReport make_bounds_report(const ResourceDecomposition &d, const DensityMatrix &sigma0, double beta,
                                int steps, double epsilon) {
    require_steps(steps);
    const ComplexMatrix h = protocol_hamiltonian(d);
    const auto spectral = ground(h);

    BoundsReport r;
    r.terms = d.terms.size();
    r.beta = beta;
    r.steps = steps;
    r.h_max = d.max_abs_weight();
    r.dimension = sigma0.dimension();
    r.gap = spectral.gap;
    r.degenerate = spectral.degenerate;
    r.f0 = std::clamp(
        std::real(spectral.ground_vector.amplitudes().dot(sigma0.matrix() * spectral.ground_vector.amplitudes())),
        0.0, 1.0);
    r.norm_h = operator_norm(h);
    r.epsilon = epsilon;

    r.trotter_error = trotter_error(r.terms, beta, r.h_max, steps);
    r.sim_distance_bound = sim_distance_bound(r.terms, beta, r.h_max, steps);
    if (r.f0 > 0.0 && r.dimension >= 2) {
        r.fidelity_lower_bound_main = fidelity_lower_bound(beta, r.gap, r.f0, r.dimension, FidelityBoundVariant::main);
        r.fidelity_lower_bound_sm = fidelity_lower_bound(beta, r.gap, r.f0, r.dimension, FidelityBoundVariant::sm);
        r.distance_upper_bound = distance_upper_bound(beta, r.gap, r.f0);
        r.error_budget = *r.distance_upper_bound + r.sim_distance_bound;
    } else {
        r.notes.push_back("initial state has no overlap with the ground state; fidelity bounds undefined");
    }
    try {
        r.beta_star = beta_star(r.gap, r.f0, epsilon);
        r.n_star = n_star(r.norm_h, r.gap, r.f0, epsilon);
        r.p_star = p_star(h, sigma0, *r.beta_star, *r.n_star, r.terms);
    } catch (const DomainError &e) {
        r.notes.push_back(std::string("beta*/N*/p* not evaluated: ") + e.what());
    }

    r.strategyA_probability = strategyA_probability(h, sigma0, beta, steps, r.terms);
    r.strategyB_global_probability = strategyB_probability(h, sigma0, beta, steps, r.terms);
    r.strategyB_local_probability = strategyB_local_probability(h, sigma0, beta, steps, r.terms, false);
    r.strategyB_local_probability_alt = strategyB_local_probability(h, sigma0, beta, steps, r.terms, true);
    for (const auto *p : {&r.strategyA_probability, &r.strategyB_global_probability, &r.strategyB_local_probability,
                          &r.strategyB_local_probability_alt}) {
        if (p->clamped) {
            r.notes.push_back("a closed-form success probability exceeded 1 (signed weights) and was clamped");
            break;
        }
    }
    r.notes.push_back(
        "sim_distance_bound uses D^2 = 2(1 - sqrt F); distance_upper_bound, error_budget and beta*/N* use "
        "D^2 = 1 - sqrt F (divide a D^2 = 2(1 - sqrt F) distance by sqrt 2 to compare)");
    return r;
}

}  // namespace sbqs

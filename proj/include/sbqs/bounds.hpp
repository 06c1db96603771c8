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

// Analytic error and success-probability bounds for the protocol, plus
// predicate forms of the operator-product error lemmas.
//
// Big-O bounds are evaluated with constant 1. Two Bures conventions are in
// play: the trajectory distance uses D^2 = 2(1 - sqrt F) while the
// ground-state distance bound and the beta*/N* sufficiency condition use
// D^2 = 1 - sqrt F.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbqs/hamiltonian.hpp"
#include "sbqs/linalg.hpp"

namespace sbqs {

/// l^2 beta^2 h^2 / N.
double trotter_error(std::size_t terms, double beta, double h, int steps);

/// 2 l^2 beta^2 h^2 / N.
double sim_distance_bound(std::size_t terms, double beta, double h, int steps);

enum class FidelityBoundVariant {
    main,  ///< 1 / (1 + d e^{-2 beta gap} / F0)
    sm,    ///< 1 / (1 + e^{-2 beta gap} (1 - F0) / F0)
};

/// Lower bound on <E0| sigma(beta) |E0>. Requires F0 in (0, 1], gap >= 0,
/// d >= 2; F0 = 0 raises DomainError.
double fidelity_lower_bound(double beta, double gap, double f0, std::size_t dim, FidelityBoundVariant variant);

/// sqrt(1 - sm fidelity bound): bound on the distance (D^2 = 1 - sqrt F)
/// between the exactly evolved state and the ground state.
double distance_upper_bound(double beta, double gap, double f0);

struct ErrorBudget {
    double simulation = 0.0;  ///< 2 l^2 beta^2 h^2 / N
    double ground = 0.0;      ///< distance_upper_bound
    double total = 0.0;
};

ErrorBudget error_budget(std::size_t terms, double beta, double h, int steps, double gap, double f0);

/// (1 / 2 gap) log((1 - F0)(4 - eps^2) / (F0 eps^2)), clamped below at 0.
/// Throws DomainError for gap <= 0, F0 outside (0, 1) or eps outside (0, 2).
double beta_star(double gap, double f0, double epsilon);

/// ||H||^2 / (eps gap^2) [log(...)]^2, or 0 when beta* is clamped to 0.
double n_star(double norm_h, double gap, double f0, double epsilon);

struct ProbabilityEstimate {
    double value = 0.0;  ///< clamped to [0, 1]
    double log10_value = 0.0;
    bool clamped = false;  ///< the formula exceeded 1
};

/// 2^{-N* l} Tr[e^{-beta* H} sigma0 e^{-beta* H}] with N* rounded up.
ProbabilityEstimate p_star(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta_star_value,
                           double n_star_value, std::size_t terms);

/// factor^{-N} Tr[e^{-beta H} sigma0 e^{-beta H}]; the closed-form success
/// probability of N Trotter steps when every step succeeds with
/// Tr[...]/factor.
ProbabilityEstimate chained_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                        double steps, double log2_factor_per_step);

/// Strategy A: factor 2^l per Trotter step.
ProbabilityEstimate strategyA_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                          int steps, std::size_t terms);

/// Strategy B with the global measurement: (l + 1)^{-N} Tr[...].
ProbabilityEstimate strategyB_probability(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta,
                                          int steps, std::size_t terms);

/// Strategy B with local measurements: 2^{-l N} Tr[...], or 2^{-(l+1) N}
/// Tr[...] for the alternative normalization.
ProbabilityEstimate strategyB_local_probability(const ComplexMatrix &h, const DensityMatrix &sigma0,
                                                double beta, int steps, std::size_t terms, bool alternative);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct ProductErrorReport {
    std::size_t factors = 0;
    double max_error = 0.0;  ///< max_k ||U_k - U'_k||
    double max_norm = 0.0;   ///< max_k {||U_k||, ||U'_k||}
    bool all_unitary = false;
    /// ||prod U - prod U'|| <= sum_k ||U_k - U'_k||; only meaningful when all
    /// factors are unitary.
    std::optional<InequalityCheck> unitary_chain;
    /// ||prod U - prod U'|| <= K M^{K-1} eps.
    InequalityCheck general_chain;
};

/// Products are taken as U_K ... U_1 (first factor applied first).
ProductErrorReport product_error_predicates(std::span<const ComplexMatrix> operators,
                                            std::span<const ComplexMatrix> approximants);

/// ||prod_i (I - delta_i A_i) - I + sum_i delta_i A_i||
///   <= C(n, 2) max|delta|^2 max ||A_i||^2.
InequalityCheck expansion_error_predicate(std::span<const ComplexMatrix> operators,
                                          std::span<const double> deltas);

struct BoundsReport {
    std::size_t terms = 0;  ///< l
    double beta = 0.0;
    int steps = 0;  ///< N
    double h_max = 0.0;
    std::size_t dimension = 0;
    double gap = 0.0;
    double f0 = 0.0;
    double norm_h = 0.0;
    double epsilon = 0.0;
    bool degenerate = false;

    double trotter_error = 0.0;
    double sim_distance_bound = 0.0;
    std::optional<double> fidelity_lower_bound_main;
    std::optional<double> fidelity_lower_bound_sm;
    std::optional<double> distance_upper_bound;
    std::optional<double> error_budget;
    std::optional<double> beta_star;
    std::optional<double> n_star;
    std::optional<ProbabilityEstimate> p_star;

    ProbabilityEstimate strategyA_probability;
    ProbabilityEstimate strategyB_global_probability;
    ProbabilityEstimate strategyB_local_probability;
    ProbabilityEstimate strategyB_local_probability_alt;

    std::vector<std::string> notes;
};

/// Evaluates every bound for running `d` for imaginary time `beta` with
/// `steps` Trotter steps from `sigma0`, targeting ground-state error
/// `epsilon`. Spectral quantities come from the protocol Hamiltonian
/// sum_i h_i rho_i.
BoundsReport make_bounds_report(const ResourceDecomposition &d, const DensityMatrix &sigma0, double beta,
                                int steps, double epsilon);

}  // namespace sbqs

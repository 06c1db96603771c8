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

// State-based simulation of imaginary-time evolution.
//
// Every resource term rho_i with weight h_i is consumed once per Trotter step:
// a control qubit prepared in (|0> - delta|1>)/sqrt(1 + delta^2) drives a
// controlled-SWAP between a fresh copy of rho_i and the simulator, the
// resource copy is discarded, and the control is post-selected. Strategy A
// post-selects each control on |+> immediately; strategy B keeps the l
// controls of one Trotter step and post-selects them jointly, either on
// |+>^l (local) or on the uniform superposition of |0...0> and the l one-hot
// strings (global).
//
// Three execution modes are supported:
//   faithful   exact density-matrix simulation of the control/simulator
//              register, with resources absorbed as Kraus channels;
//   effective  the first-order update sigma -> (I - delta rho) sigma (I - delta rho);
//   sampled    effective evolution with measurement outcomes drawn at random.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbqs/hamiltonian.hpp"
#include "sbqs/linalg.hpp"

namespace sbqs {

enum class Strategy { A, B_local, B_global };
enum class Mode { faithful, effective, sampled };
enum class Measurement { local, global };

std::string_view to_string(Strategy s);
std::string_view to_string(Mode m);

/// Post-selection probabilities at or below this terminate the protocol.
inline constexpr double kExtinctionThreshold = 1e-14;

struct EngineOptions {
    /// Largest (controls x simulator) dimension faithful strategy B may build.
    std::size_t max_faithful_dimension = 1024;
};

/// (|0> - delta|1>) / sqrt(1 + delta^2). Throws PlanError for |delta| >= 1.
PureState control_state(double delta);

/// Kraus operators on (control, simulator) obtained by tracing the resource
/// register out of the controlled-SWAP. For rho = sum_j lambda_j |j><j|:
///   K_{k,j} = sqrt(lambda_j) (delta_{kj} |0><0| x I + |1><1| x |j><k|_support).
struct KrausSet {
    RegisterLayout layout;  ///< "c" followed by simulator qubits "q0".."q{n-1}"
    std::vector<ComplexMatrix> ops;

    /// sum_k K_k^dagger K_k.
    ComplexMatrix completeness() const;
};

KrausSet cswap_channel(const DensityMatrix &rho, std::span<const int> support, int n_sim);

ComplexMatrix apply_channel(const KrausSet &channel, const ComplexMatrix &input);

struct StepResult {
    DensityMatrix state;  ///< normalized post-selected simulator state
    double probability = 0.0;
};

/// One strategy-A sub-step. `sampled` behaves like `effective` here.
/// Throws ExtinctionError when the success probability is at or below
/// kExtinctionThreshold.
StepResult step_strategyA(const DensityMatrix &sigma, const ResourceTerm &term, int n_sim, double delta,
                          Mode mode);

struct TermStep {
    const ResourceTerm *term = nullptr;
    double delta = 0.0;
};

/// One strategy-B Trotter step over all `terms`, with a single joint
/// measurement of their controls at the end.
StepResult step_strategyB(const DensityMatrix &sigma, std::span<const TermStep> terms, int n_sim,
                          Measurement measurement, Mode mode, const EngineOptions &options = {});

struct SubStep {
    std::size_t term_index = 0;
    double delta = 0.0;  ///< beta * h_i / N
};

struct TrotterPlan {
    ResourceDecomposition decomposition;
    double beta = 0.0;
    int steps = 1;                   ///< N
    std::vector<SubStep> sub_steps;  ///< one Trotter step, in decomposition order
    Strategy strategy = Strategy::A;
    Mode mode = Mode::faithful;
    std::vector<std::string> warnings;

    std::size_t term_count() const {
        return sub_steps.size();
    }
    double max_abs_delta() const;
};

/// delta_i = beta h_i / N for every term. Throws PlanError for N < 1,
/// negative beta, or any |delta_i| >= 1; warns above 0.1.
TrotterPlan make_plan(ResourceDecomposition d, double beta, int steps, Strategy strategy, Mode mode);

enum class ProbabilitySource { faithful_exact, effective, paper_formula };
std::string_view to_string(ProbabilitySource s);

struct LedgerEntry {
    std::size_t sub_step = 0;
    double probability = 0.0;
    ProbabilitySource source = ProbabilitySource::faithful_exact;
};

/// Per-measurement success probabilities. Products are accumulated in log
/// space since a full run can multiply thousands of factors near 1/2.
class ProbabilityLedger {
   public:
    void record(std::size_t sub_step, double probability, ProbabilitySource source);

    const std::vector<LedgerEntry> &entries() const {
        return entries_;
    }
    std::size_t count(ProbabilitySource source) const;
    double log_cumulative(ProbabilitySource source) const;
    double cumulative(ProbabilitySource source) const;
    std::vector<double> probabilities(ProbabilitySource source) const;

   private:
    std::vector<LedgerEntry> entries_;
    double log_products_[3] = {0.0, 0.0, 0.0};
};

struct Trajectory {
    std::vector<DensityMatrix> snapshots;  ///< normalized state after each Trotter step
    DensityMatrix final_state{ComplexMatrix()};
    ProbabilityLedger ledger;
    ProbabilitySource executed_source = ProbabilitySource::faithful_exact;
    std::optional<bool> sampled_success;  ///< one sampled trial, sampled mode only
    double wall_time_seconds = 0.0;
};

/// Executes all N Trotter steps. Strategy B measures at the end of every
/// Trotter step. The ledger receives the executed-mode probability and the
/// closed-form per-measurement value with exact exponentials.
Trajectory run(const TrotterPlan &plan, const DensityMatrix &sigma0, std::uint64_t seed,
               const EngineOptions &options = {});

struct SampleResult {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double frequency = 0.0;
    double exact_probability = 0.0;  ///< probability the frequency estimates
    /// -1 for an accepted trial, otherwise the index of the failed measurement.
    std::vector<std::int64_t> outcomes;
    std::optional<DensityMatrix> accepted_state_average;
};

/// Monte Carlo over complete protocol runs. Each trial draws every
/// measurement in order and aborts at the first failed post-selection.
/// Probabilities come from the faithful chain for faithful plans and from the
/// effective chain otherwise. Extinct chains yield zero successes.
SampleResult sample_run(const TrotterPlan &plan, const DensityMatrix &sigma0, std::size_t trials,
                        std::uint64_t seed, const EngineOptions &options = {});

}  // namespace sbqs

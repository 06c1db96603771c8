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

// Experiment configuration and beta sweeps.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbqs/bounds.hpp"
#include "sbqs/engine.hpp"
#include "sbqs/hamiltonian.hpp"

namespace sbqs {

enum class ModelKind { ising, pauli };

struct ModelSpec {
    ModelKind kind = ModelKind::ising;
    IsingParams ising;
    PauliSum pauli;

    int qubits() const {
        return kind == ModelKind::ising ? ising.n : pauli.n;
    }
};

/// Defaults: strategy A, faithful mode, N = 200, seed 0, beta grid
/// 0, 0.25, ..., 2, one worker.
struct ExperimentConfig {
    ModelSpec model;
    DecompositionKind decomposition = DecompositionKind::ising_local;
    bool shift_to_positive = false;
    std::vector<double> betas;
    int steps = 200;
    Strategy strategy = Strategy::A;
    Mode mode = Mode::faithful;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string initial_state = "uniform";  ///< "uniform" or a bitstring such as "0101"
    double epsilon = 0.1;
    /// Levels within this distance of E_0 count as ground space.
    double ground_space_tolerance = 1e-3;
    std::size_t max_faithful_dimension = 1024;
    std::string out_dir;
    bool svg = false;
    unsigned parallel = 1;

    /// Every violated invariant, one message each.
    std::vector<std::string> violations() const;
};

/// Parses JSON config text. Syntax errors report line and column; unknown
/// fields and invariant violations are all listed. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path &path);

/// The fully resolved configuration (defaults included) as JSON text.
std::string config_to_json(const ExperimentConfig &config);

/// Hamiltonian, decomposition and initial state shared by all rows.
struct ExperimentSetup {
    ComplexMatrix hamiltonian;  ///< source Hamiltonian (after the optional shift)
    double shift = 0.0;
    ResourceDecomposition decomposition;
    double reconstruction_residual = 0.0;  ///< ||densify(decomposition) - hamiltonian||_F
    DensityMatrix initial_state{ComplexMatrix()};
};

ExperimentSetup prepare_experiment(const ExperimentConfig &config);

struct ResultRow {
    double beta = 0.0;
    std::optional<double> fidelity_sbqs_vs_ground;
    std::optional<double> fidelity_exact_ite_vs_ground;
    std::optional<double> bures_sbqs_vs_exact_ite;
    std::optional<double> success_prob_formula;
    std::optional<double> success_prob_faithful;
    std::optional<double> success_prob_empirical;
    std::optional<double> energy_sbqs;
    std::optional<double> bound_eq15;
    std::optional<double> fidelity_bound_sm;
    int ground_space_dim = 1;
    std::string status;  ///< empty on success
};

struct ExperimentResult {
    std::vector<ResultRow> rows;  ///< in beta order
    BoundsReport bounds;          ///< at the largest beta
    std::vector<std::string> warnings;

    bool all_ok() const;
};

/// One row per beta. Rows run on up to `config.parallel` threads; row i uses
/// seed `config.seed + i`, so results do not depend on the width.
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Bounds report at every beta of the grid.
std::vector<BoundsReport> bounds_sweep(const ExperimentConfig &config);

}  // namespace sbqs

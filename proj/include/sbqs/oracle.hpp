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

// Exact references: imaginary-time evolution by diagonalization, ground
// states, and state metrics.

#pragma once

#include "sbqs/linalg.hpp"

namespace sbqs {

/// Gap below which two levels are reported as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;

struct SpectralData {
    double ground_energy = 0.0;
    PureState ground_vector{ComplexVector()};
    double gap = 0.0;  ///< E_1 - E_0 (0 for a 1-dimensional space)
    RealVector spectrum;
    bool degenerate = false;
};

/// Ground state with a deterministic phase: the largest-magnitude amplitude is
/// made real and positive.
SpectralData ground(const ComplexMatrix &h);

struct GroundSpace {
    ComplexMatrix projector;
    int rank = 0;
};

/// Projector onto every eigenvector with E - E_0 <= tolerance.
GroundSpace ground_space(const ComplexMatrix &h, double tolerance);

/// e^{-beta H} sigma0 e^{-beta H} / Tr[e^{-2 beta H} sigma0].
DensityMatrix exact_ite(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta);

/// log Tr[e^{-beta H} sigma0 e^{-beta H}], evaluated without overflow.
double ite_log_norm(const ComplexMatrix &h, const DensityMatrix &sigma0, double beta);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/// Bures distance with D^2 = 2 (1 - sqrt F).
double bures_distance(const DensityMatrix &a, const DensityMatrix &b);

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Tr[H sigma].
double energy(const ComplexMatrix &h, const DensityMatrix &sigma);

/// Tr[P sigma] for an orthogonal projector P.
double projector_fidelity(const ComplexMatrix &projector, const DensityMatrix &sigma);

}  // namespace sbqs

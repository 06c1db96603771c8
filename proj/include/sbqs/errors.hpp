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

#include <stdexcept>
#include <string>

namespace sbqs {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix dimensions that do not fit together (or do not fit a layout).
struct DimensionError : Error {
    using Error::Error;
};

/// A dimension would exceed the configured capacity.
struct CapacityError : Error {
    using Error::Error;
};

/// A function was evaluated outside its domain (sqrt of a negative eigenvalue,
/// undefined bound, zero gap, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Input that should be Hermitian / a valid state is not.
struct InvalidStateError : Error {
    using Error::Error;
};

/// A Trotter plan cannot be realised (|delta| >= 1, N < 1, ...).
struct PlanError : Error {
    using Error::Error;
};

/// A post-selection probability (or normalization) fell below the extinction
/// threshold.
struct ExtinctionError : Error {
    using Error::Error;
};

/// Invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace sbqs

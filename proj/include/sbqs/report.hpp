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

// CSV, SVG and JSON output for experiment results.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sbqs/bounds.hpp"
#include "sbqs/experiment.hpp"

namespace sbqs {

/// The ten fixed result columns, in file order.
const std::vector<std::string> &csv_columns();

/// RFC 4180 with LF line endings and %.12g numbers. Missing values are empty
/// fields. `ground_space_dim` and `status` are appended only when some row
/// has a degenerate ground space or a failure.
std::string format_csv(const std::vector<ResultRow> &rows);
void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path);

/// Inverse of format_csv. Throws ConfigError on malformed input.
std::vector<ResultRow> parse_csv(std::string_view text);

/// Fidelity-vs-beta chart with exactly two polylines (SBQS and exact ITE).
std::string format_svg(const std::vector<ResultRow> &rows);
void emit_svg(const std::vector<ResultRow> &rows, const std::filesystem::path &path);

std::string bounds_to_json(const BoundsReport &report);
std::string bounds_to_json(const std::vector<BoundsReport> &reports);

}  // namespace sbqs

// Copyright 2026 The jcenters Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCENTERS_IO_HPP_
#define JCENTERS_IO_HPP_

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jcenters/categorical.hpp"
#include "jcenters/gaussian.hpp"

namespace jcenters {

// Rows whose sum is within this distance of one are rescaled; others are rejected.
inline constexpr double kRenormalizeTolerance = 1e-6;

std::string read_file(const std::string& path);

// One histogram per non-empty line, comma-separated positive reals. Lines
// starting with '#' are comments. Errors carry the 1-based line and field.
std::vector<SimplexPoint> parse_histogram_csv(std::string_view text);

// A single CSV row of positive weights; `expected` is the number of points.
Vec parse_weights_csv(std::string_view text, std::size_t expected);

struct GaussianInput {
  std::vector<GaussianParam> points;
  std::optional<Vec> weights;
};

// JSON array of {"mean": [...], "cov": [[...], ...], "weight": w?}.
GaussianInput parse_gaussian_json(std::string_view text);

// Serializes with two-space indentation and every floating-point number in
// %.5e form; integers, strings and booleans are written as-is.
std::string dump_json(const nlohmann::json& j);

}  // namespace jcenters

#endif  // JCENTERS_IO_HPP_

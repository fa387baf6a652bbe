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

#ifndef JCENTERS_GAUSS_BREGMAN_HPP_
#define JCENTERS_GAUSS_BREGMAN_HPP_

#include <utility>
#include <vector>

#include "jcenters/legendre.hpp"

namespace jcenters {

struct GBOptions {
  double tol = 1e-8;  // stop when the gap norm is at most tol
  int max_iter = 200;
  bool keep_trace = false;
};

struct GBResult {
  Vec center;
  CenterDiagnostics diagnostics;
  std::vector<std::pair<Vec, Vec>> trace;  // (arithmetic, quasi-arithmetic) per iterate
  std::vector<double> gaps;                // gap norm per iterate, always recorded
  bool converged = false;
  bool gap_monotone = true;                // gaps strictly decreased until the stop
};

/// One step: (arithmetic midpoint, grad-quasi-arithmetic midpoint).
std::pair<Vec, Vec> gb_step(const GeneratorSpec& gen, const Vec& upper, const Vec& lower);

/// Runs the double sequence from an explicit starting pair. The returned
/// center is the last arithmetic iterate.
GBResult gb_pair(const GeneratorSpec& gen, const Vec& upper0, const Vec& lower0,
                 const GBOptions& opts = {});

/// Starts from the right (arithmetic) and left (quasi-arithmetic) centroids.
GBResult gb_center(const GeneratorSpec& gen, const WeightedParamSet& set, const GBOptions& opts = {});

/// Distance between the two-point mean of (t1, t2) and the mean of its
/// first step; zero in exact arithmetic.
double gb_invariance_check(const GeneratorSpec& gen, const Vec& t1, const Vec& t2,
                           const GBOptions& opts = {});

}  // namespace jcenters

#endif  // JCENTERS_GAUSS_BREGMAN_HPP_

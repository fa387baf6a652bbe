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

#ifndef JCENTERS_SPECIAL_FUNCTIONS_HPP_
#define JCENTERS_SPECIAL_FUNCTIONS_HPP_

#include <vector>

namespace jcenters {

/// Relative tolerance and iteration cap shared by the scalar solvers.
struct ToleranceConfig {
  double rel_tol = 1e-12;
  int max_iter = 100;

  /// Throws DomainError unless 0 < rel_tol < 1 and max_iter >= 1.
  void Validate() const;
};

/// Principal branch of the Lambert W function, w * exp(w) = x, w >= -1.
/// Throws DomainError for x < -1/e.
double lambert_w0(double x, const ToleranceConfig& tol = {});

/// Complete elliptic integral of the first kind with modulus u,
/// integral over [0, pi/2] of 1 / sqrt(1 - u^2 sin^2 t), by adaptive
/// Gauss-Kronrod quadrature. Throws DomainError for |u| >= 1.
double elliptic_k(double u, const ToleranceConfig& tol = {});

/// Gauss arithmetic-geometric mean of two positive reals.
double scalar_agm(double x, double y, const ToleranceConfig& tol = {});

/// Gaps |a_t - g_t| of the arithmetic-geometric double sequence started at
/// (x, y), including t = 0, until the gap stops shrinking or max_iter steps.
std::vector<double> agm_gap_sequence(double x, double y, const ToleranceConfig& tol = {});

}  // namespace jcenters

#endif  // JCENTERS_SPECIAL_FUNCTIONS_HPP_

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

#ifndef JCENTERS_LEGENDRE_HPP_
#define JCENTERS_LEGENDRE_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

#include "jcenters/weighted_set.hpp"

namespace jcenters {

using Vec = Eigen::VectorXd;

/// A convex generator of Legendre type over flat parameter vectors.
///
/// Coordinates may carry inner-product weights (`metric`): the ambient inner
/// product is sum_k metric_k a_k b_k. `grad` returns the gradient with
/// respect to that inner product, so dF = <grad F, d theta>. Matrix-valued
/// parameters flattened as upper triangles use weight 2 off the diagonal,
/// which reproduces tr(XY).
struct GeneratorSpec {
  std::string name;
  int dim = 0;
  bool separable = false;
  std::function<double(const Vec&)> F;
  std::function<Vec(const Vec&)> grad;
  std::function<Vec(const Vec&)> grad_inv;
  std::function<bool(const Vec&)> in_domain;
  Vec metric;  // empty means all ones

  double inner(const Vec& a, const Vec& b) const;
  double norm(const Vec& a) const { return std::sqrt(inner(a, a)); }
  double metric_weight(int k) const { return metric.size() == 0 ? 1.0 : metric[k]; }

  /// Throws DomainError when theta has the wrong size or is outside the domain.
  void require(const Vec& theta, const char* what) const;
};

struct CenterDiagnostics {
  int iterations = 0;
  double final_gap = 0.0;
  double residual = 0.0;
  std::int64_t elapsed_ns = 0;
  bool converged = true;
};

// Scalar-per-coordinate generators on positive or real vectors.
GeneratorSpec burg_generator(int dim);           // -sum log t
GeneratorSpec shannon_generator(int dim);        // sum t log t - t
GeneratorSpec squared_norm_generator(int dim);   // sum t^2

/// Convex conjugate built from a generator: F*(eta) = <theta, eta> - F(theta)
/// with theta = grad_inv(eta). Domain membership is tested through grad_inv
/// unless `dual_domain` is given.
GeneratorSpec dual_generator(const GeneratorSpec& gen,
                             std::function<bool(const Vec&)> dual_domain = {});

double bregman_div(const GeneratorSpec& gen, const Vec& t1, const Vec& t2);
double symmetrized_bregman(const GeneratorSpec& gen, const Vec& t1, const Vec& t2);
double mixed_bregman(const GeneratorSpec& gen, const Vec& t1, const Vec& t, const Vec& t2);

Vec quasi_arithmetic_center(const GeneratorSpec& gen, const WeightedParamSet& set);
Vec right_bregman_centroid(const WeightedParamSet& set);

/// Weighted sum of symmetrized divergences from every point to theta.
double jeffreys_loss(const GeneratorSpec& gen, const WeightedParamSet& set, const Vec& theta);

/// Norm of the gradient of jeffreys_loss at theta, by centered differences
/// with step cbrt(machine eps) * max(1, |theta_k|). The norm is the dual
/// norm of the generator's metric.
double energy_grad_residual(const GeneratorSpec& gen, const WeightedParamSet& set,
                            const Vec& theta);

}  // namespace jcenters

#endif  // JCENTERS_LEGENDRE_HPP_

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

#ifndef JCENTERS_UNIPARAM_HPP_
#define JCENTERS_UNIPARAM_HPP_

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "jcenters/legendre.hpp"

namespace jcenters {

// Cumulant of a one-parameter exponential family on an open interval.
struct ScalarGenerator {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::function<double(double)> f_second;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double theta_ref = 0.0;  // anchor of the h integral

  bool contains(double t) const { return t > lo && t < hi; }
};

ScalarGenerator quadratic_scalar();    // t^2 / 2 on R (fixed-variance normal)
ScalarGenerator poisson_scalar();      // e^t on R
ScalarGenerator exponential_scalar();  // -log(-t) on t < 0
ScalarGenerator bernoulli_scalar();    // log(1 + e^t) on R

// h(t) = integral from theta_ref to t of sqrt(f''), absolute accuracy 1e-10.
double h_of(const ScalarGenerator& gen, double t);

// Monotone inverse of h; throws DomainError when y is outside the range of h.
double h_inverse(const ScalarGenerator& gen, double y);

// (f')^{-1}(y), bracketed on [lo_hint, hi_hint] and widened when needed.
double f_prime_inverse(const ScalarGenerator& gen, double y, double lo_hint, double hi_hint);

struct ScalarJfr {
  double center;
  double right;  // weighted arithmetic mean of the parameters
  double left;   // (f')^{-1} of the weighted mean of f'
};

ScalarJfr jfr_center_1d(const ScalarGenerator& gen, const std::vector<double>& thetas,
                        const Vec& weights);

// The scalar cumulant as a one-dimensional GeneratorSpec (for the GB center).
GeneratorSpec as_generator(const ScalarGenerator& gen);

}  // namespace jcenters

#endif  // JCENTERS_UNIPARAM_HPP_

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

#include "jcenters/legendre.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace jcenters {

double GeneratorSpec::inner(const Vec& a, const Vec& b) const {
  if (metric.size() == 0) return a.dot(b);
  return (metric.array() * a.array() * b.array()).sum();
}

void GeneratorSpec::require(const Vec& theta, const char* what) const {
  if (theta.size() != dim) {
    throw DomainError(std::string(what) + ": expected dimension " + std::to_string(dim) + ", got " +
                      std::to_string(theta.size()));
  }
  if (!theta.allFinite() || !in_domain(theta)) {
    throw DomainError(std::string(what) + ": point outside the domain of " + name);
  }
}

namespace {

bool all_positive(const Vec& t) { return (t.array() > 0.0).all(); }

}  // namespace

GeneratorSpec burg_generator(int dim) {
  GeneratorSpec g;
  g.name = "burg";
  g.dim = dim;
  g.separable = true;
  g.F = [](const Vec& t) { return -t.array().log().sum(); };
  g.grad = [](const Vec& t) -> Vec { return -t.array().inverse(); };
  g.grad_inv = [](const Vec& e) -> Vec { return -e.array().inverse(); };
  g.in_domain = all_positive;
  return g;
}

GeneratorSpec shannon_generator(int dim) {
  GeneratorSpec g;
  g.name = "shannon";
  g.dim = dim;
  g.separable = true;
  g.F = [](const Vec& t) { return (t.array() * t.array().log() - t.array()).sum(); };
  g.grad = [](const Vec& t) -> Vec { return t.array().log(); };
  g.grad_inv = [](const Vec& e) -> Vec { return e.array().exp(); };
  g.in_domain = all_positive;
  return g;
}

GeneratorSpec squared_norm_generator(int dim) {
  GeneratorSpec g;
  g.name = "squared_norm";
  g.dim = dim;
  g.separable = true;
  g.F = [](const Vec& t) { return t.squaredNorm(); };
  g.grad = [](const Vec& t) -> Vec { return 2.0 * t; };
  g.grad_inv = [](const Vec& e) -> Vec { return 0.5 * e; };
  g.in_domain = [](const Vec&) { return true; };
  return g;
}

GeneratorSpec dual_generator(const GeneratorSpec& gen, std::function<bool(const Vec&)> dual_domain) {
  GeneratorSpec d;
  d.name = gen.name + "_dual";
  d.dim = gen.dim;
  d.separable = gen.separable;
  d.metric = gen.metric;
  d.F = [gen](const Vec& eta) {
    const Vec theta = gen.grad_inv(eta);
    return gen.inner(theta, eta) - gen.F(theta);
  };
  d.grad = gen.grad_inv;
  d.grad_inv = gen.grad;
  if (dual_domain) {
    d.in_domain = std::move(dual_domain);
  } else {
    d.in_domain = [gen](const Vec& eta) {
      try {
        const Vec theta = gen.grad_inv(eta);
        return theta.allFinite() && gen.in_domain(theta);
      } catch (const DomainError&) {
        return false;
      }
    };
  }
  return d;
}

double bregman_div(const GeneratorSpec& gen, const Vec& t1, const Vec& t2) {
  gen.require(t1, "bregman_div");
  gen.require(t2, "bregman_div");
  return gen.F(t1) - gen.F(t2) - gen.inner(t1 - t2, gen.grad(t2));
}

double symmetrized_bregman(const GeneratorSpec& gen, const Vec& t1, const Vec& t2) {
  gen.require(t1, "symmetrized_bregman");
  gen.require(t2, "symmetrized_bregman");
  return gen.inner(t1 - t2, gen.grad(t1) - gen.grad(t2));
}

double mixed_bregman(const GeneratorSpec& gen, const Vec& t1, const Vec& t, const Vec& t2) {
  return 0.5 * bregman_div(gen, t1, t) + 0.5 * bregman_div(gen, t, t2);
}

Vec quasi_arithmetic_center(const GeneratorSpec& gen, const WeightedParamSet& set) {
  check_weights(set.weights, set.size());
  Vec acc = Vec::Zero(gen.dim);
  for (std::size_t i = 0; i < set.size(); ++i) {
    gen.require(set.points[i], "quasi_arithmetic_center");
    acc += set.weight(i) * gen.grad(set.points[i]);
  }
  if (set.size() == 1) return set.points.front();
  Vec c = gen.grad_inv(acc);
  gen.require(c, "quasi_arithmetic_center result");
  return c;
}

Vec right_bregman_centroid(const WeightedParamSet& set) {
  check_weights(set.weights, set.size());
  Vec acc = Vec::Zero(set.points.front().size());
  for (std::size_t i = 0; i < set.size(); ++i) acc += set.weight(i) * set.points[i];
  return acc;
}

double jeffreys_loss(const GeneratorSpec& gen, const WeightedParamSet& set, const Vec& theta) {
  gen.require(theta, "jeffreys_loss");
  const Vec eta = gen.grad(theta);
  double loss = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    gen.require(set.points[i], "jeffreys_loss");
    loss += set.weight(i) * gen.inner(set.points[i] - theta, gen.grad(set.points[i]) - eta);
  }
  return loss;
}

double energy_grad_residual(const GeneratorSpec& gen, const WeightedParamSet& set,
                            const Vec& theta) {
  gen.require(theta, "energy_grad_residual");
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  double sq = 0.0;
  for (int k = 0; k < gen.dim; ++k) {
    double h = base * std::max(1.0, std::abs(theta[k]));
    Vec plus = theta;
    Vec minus = theta;
    // Shrink the step until both probes stay in the domain.
    for (int tries = 0;; ++tries) {
      plus[k] = theta[k] + h;
      minus[k] = theta[k] - h;
      if (plus[k] == theta[k] || minus[k] == theta[k]) {
        throw NumericalError("energy_grad_residual: finite-difference step underflow");
      }
      if (gen.in_domain(plus) && gen.in_domain(minus)) break;
      if (tries > 60) throw NumericalError("energy_grad_residual: no in-domain probe step");
      h *= 0.5;
    }
    const double partial = (jeffreys_loss(gen, set, plus) - jeffreys_loss(gen, set, minus)) / (2.0 * h);
    sq += partial * partial / gen.metric_weight(k);
  }
  return std::sqrt(sq);
}

}  // namespace jcenters

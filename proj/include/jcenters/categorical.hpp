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

#ifndef JCENTERS_CATEGORICAL_HPP_
#define JCENTERS_CATEGORICAL_HPP_

#include <vector>

#include "jcenters/legendre.hpp"

namespace jcenters {

// Point of the open probability simplex: all entries > 0, sum 1 within 1e-12.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  explicit SimplexPoint(Vec probs);

  // Divides by the sum; rejects non-positive entries.
  static SimplexPoint Normalized(const Vec& masses);

  const Vec& probs() const { return probs_; }
  int dim() const { return static_cast<int>(probs_.size()); }
  double operator[](int j) const { return probs_[j]; }

 private:
  Vec probs_;
};

using HistogramSet = WeightedSet<SimplexPoint>;

// Throws DomainError if rows disagree on dimension.
void check_histogram_set(const HistogramSet& set);

struct JeffreysCatResult {
  SimplexPoint center;
  double lambda = 0.0;
  double mass_residual = 0.0;         // |s(lambda) - 1| before renormalization
  double fixed_point_residual = 0.0;  // |lambda + KL(c(lambda) : g)|
  CenterDiagnostics diagnostics;
};

struct CatCenter {
  SimplexPoint center;
  CenterDiagnostics diagnostics;
  std::vector<double> tv_gaps;  // total-variation gap per iterate
};

struct UnnormalizedCenter {
  Vec masses;   // c(0)
  double mass;  // sum of c(0)
};

Vec cat_to_natural(const SimplexPoint& p);
SimplexPoint cat_from_natural(const Vec& theta);

// Log-partition generator over the d-1 free natural coordinates.
GeneratorSpec cat_generator(int d);

SimplexPoint arithmetic_mean(const HistogramSet& set);
SimplexPoint normalized_geometric_mean(const HistogramSet& set);

// c_j(lambda) = a_j / W0((a_j / g_j) e^(1 + lambda)); not normalized.
Vec c_of_lambda(const SimplexPoint& a, const SimplexPoint& g, double lambda);

// Bisection on lambda until the bracket width is at most eps.
JeffreysCatResult jeffreys_centroid_cat(const HistogramSet& set, double eps = 1e-10);

// Fisher-Rao midpoint of the arithmetic and normalized geometric means.
SimplexPoint jfr_center_cat(const HistogramSet& set);

// Double sequence a <- (a+g)/2, g <- normalize(sqrt(a g)) until the total
// variation gap is at most eps; returns the last arithmetic iterate.
CatCenter gb_center_cat(const HistogramSet& set, double eps = 1e-8, int max_iter = 200);

UnnormalizedCenter unnormalized_center(const HistogramSet& set);

double kl_cat(const SimplexPoint& p, const SimplexPoint& q);
double jeffreys_cat(const SimplexPoint& p, const SimplexPoint& q);
double tv_cat(const SimplexPoint& p, const SimplexPoint& q);

double jeffreys_loss_cat(const HistogramSet& set, const SimplexPoint& q);

// L_J(candidate) / L_J(reference) - 1. Throws DomainError on zero reference loss.
double approximation_factor(const HistogramSet& set, const SimplexPoint& candidate,
                            const SimplexPoint& reference);

}  // namespace jcenters

#endif  // JCENTERS_CATEGORICAL_HPP_

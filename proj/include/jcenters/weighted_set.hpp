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

#ifndef JCENTERS_WEIGHTED_SET_HPP_
#define JCENTERS_WEIGHTED_SET_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "jcenters/errors.hpp"

namespace jcenters {

// Weights must be strictly positive and sum to one within 1e-12.
inline void check_weights(const Eigen::VectorXd& w, std::size_t n) {
  if (n == 0) throw DomainError("weighted set is empty");
  if (static_cast<std::size_t>(w.size()) != n) {
    throw DomainError("weight count " + std::to_string(w.size()) + " does not match " +
                      std::to_string(n) + " points");
  }
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw DomainError("weight " + std::to_string(i) + " is not strictly positive");
    }
  }
  if (std::abs(w.sum() - 1.0) > 1e-12) throw DomainError("weights do not sum to one");
}

inline Eigen::VectorXd uniform_weights(std::size_t n) {
  return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

// A nonempty list of points with open-simplex weights.
template <class T>
struct WeightedSet {
  std::vector<T> points;
  Eigen::VectorXd weights;

  WeightedSet() = default;
  WeightedSet(std::vector<T> pts, Eigen::VectorXd w) : points(std::move(pts)), weights(std::move(w)) {
    check_weights(weights, points.size());
  }
  explicit WeightedSet(std::vector<T> pts) : points(std::move(pts)) {
    weights = uniform_weights(points.size());
    check_weights(weights, points.size());
  }

  std::size_t size() const { return points.size(); }
  double weight(std::size_t i) const { return weights[static_cast<Eigen::Index>(i)]; }
};

using WeightedParamSet = WeightedSet<Eigen::VectorXd>;

}  // namespace jcenters

#endif  // JCENTERS_WEIGHTED_SET_HPP_

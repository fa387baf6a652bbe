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

#include "jcenters/categorical.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "jcenters/special_functions.hpp"

namespace jcenters {

namespace {

std::int64_t ns_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

void require_same_dim(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.dim() != q.dim()) throw DomainError("categorical distributions differ in dimension");
}

double mass_at(const SimplexPoint& a, const SimplexPoint& g, double lambda) {
  return c_of_lambda(a, g, lambda).sum();
}

}  // namespace

SimplexPoint::SimplexPoint(Vec probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) throw DomainError("simplex point must have at least two bins");
  for (Eigen::Index j = 0; j < probs_.size(); ++j) {
    if (!(probs_[j] > 0.0) || !std::isfinite(probs_[j])) {
      throw DomainError("bin " + std::to_string(j) + " is not strictly positive");
    }
  }
  if (std::abs(probs_.sum() - 1.0) > 1e-12) throw DomainError("probabilities do not sum to one");
}

SimplexPoint SimplexPoint::Normalized(const Vec& masses) {
  if (masses.size() < 2 || !((masses.array() > 0.0).all()) || !masses.allFinite()) {
    throw DomainError("cannot normalize non-positive masses");
  }
  return SimplexPoint(masses / masses.sum());
}

void check_histogram_set(const HistogramSet& set) {
  check_weights(set.weights, set.size());
  const int d = set.points.front().dim();
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.points[i].dim() != d) {
      throw DomainError("histogram " + std::to_string(i) + " has " +
                        std::to_string(set.points[i].dim()) + " bins, expected " + std::to_string(d));
    }
  }
}

Vec cat_to_natural(const SimplexPoint& p) {
  const int d = p.dim();
  return (p.probs().head(d - 1).array() / p[d - 1]).log();
}

SimplexPoint cat_from_natural(const Vec& theta) {
  const double m = std::max(0.0, theta.size() ? theta.maxCoeff() : 0.0);
  Vec e(theta.size() + 1);
  e.head(theta.size()) = (theta.array() - m).exp();
  e[theta.size()] = std::exp(-m);
  return SimplexPoint::Normalized(e);
}

GeneratorSpec cat_generator(int d) {
  GeneratorSpec g;
  g.name = "categorical";
  g.dim = d - 1;
  g.separable = false;
  g.F = [](const Vec& t) {
    const double m = std::max(0.0, t.maxCoeff());
    return m + std::log(std::exp(-m) + (t.array() - m).exp().sum());
  };
  g.grad = [](const Vec& t) -> Vec { return cat_from_natural(t).probs().head(t.size()); };
  g.grad_inv = [](const Vec& eta) -> Vec {
    const double last = 1.0 - eta.sum();
    if (!(last > 0.0) || !((eta.array() > 0.0).all())) {
      throw DomainError("categorical moment parameter outside the open simplex");
    }
    return (eta.array() / last).log();
  };
  g.in_domain = [](const Vec& t) { return t.allFinite(); };
  return g;
}

SimplexPoint arithmetic_mean(const HistogramSet& set) {
  check_histogram_set(set);
  Vec a = Vec::Zero(set.points.front().dim());
  for (std::size_t i = 0; i < set.size(); ++i) a += set.weight(i) * set.points[i].probs();
  return SimplexPoint::Normalized(a);
}

SimplexPoint normalized_geometric_mean(const HistogramSet& set) {
  check_histogram_set(set);
  Vec lg = Vec::Zero(set.points.front().dim());
  for (std::size_t i = 0; i < set.size(); ++i) lg += set.weight(i) * set.points[i].probs().array().log().matrix();
  return SimplexPoint::Normalized((lg.array() - lg.maxCoeff()).exp());
}

Vec c_of_lambda(const SimplexPoint& a, const SimplexPoint& g, double lambda) {
  require_same_dim(a, g);
  Vec c(a.dim());
  for (int j = 0; j < a.dim(); ++j) c[j] = a[j] / lambert_w0(a[j] / g[j] * std::exp(1.0 + lambda));
  return c;
}

JeffreysCatResult jeffreys_centroid_cat(const HistogramSet& set, double eps) {
  if (!(eps > 0.0)) throw DomainError("bisection tolerance must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const SimplexPoint a = arithmetic_mean(set);
  const SimplexPoint g = normalized_geometric_mean(set);

  double lo = (a.probs().array() + g.probs().array().log()).maxCoeff() - 1.0;
  double hi = 0.0;
  // Mass s(lambda) decreases in lambda; the root satisfies s = 1.
  constexpr double kSlack = 1e-12;
  if (mass_at(a, g, lo) < 1.0 - kSlack || mass_at(a, g, hi) > 1.0 + kSlack) {
    throw NumericalError("jeffreys_centroid_cat: initial bracket does not enclose the root");
  }
  constexpr int kMaxIter = 400;
  int it = 0;
  while (hi - lo > eps && it < kMaxIter) {
    const double mid = 0.5 * (lo + hi);
    if (mass_at(a, g, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }

  JeffreysCatResult out;
  out.lambda = 0.5 * (lo + hi);
  const Vec c = c_of_lambda(a, g, out.lambda);
  const double s = c.sum();
  out.mass_residual = std::abs(s - 1.0);
  out.fixed_point_residual =
      std::abs(out.lambda + (c.array() * (c.array() / g.probs().array()).log()).sum());
  out.center = SimplexPoint::Normalized(c);
  out.diagnostics.iterations = it;
  out.diagnostics.final_gap = hi - lo;
  out.diagnostics.residual = out.fixed_point_residual;
  out.diagnostics.converged = hi - lo <= eps;
  out.diagnostics.elapsed_ns = ns_since(t0);
  if (!out.diagnostics.converged) throw NumericalError("jeffreys_centroid_cat: bisection did not converge");
  return out;
}

SimplexPoint jfr_center_cat(const HistogramSet& set) {
  const SimplexPoint a = arithmetic_mean(set);
  const SimplexPoint g = normalized_geometric_mean(set);
  const Eigen::ArrayXd sa = a.probs().array().sqrt();
  const Eigen::ArrayXd sg = g.probs().array().sqrt();
  const double denom = 2.0 * (1.0 + (sa * sg).sum());
  Vec c = ((sa + sg).square() / denom).matrix();
  // Analytically unit mass; the division only absorbs rounding.
  return SimplexPoint::Normalized(c);
}

CatCenter gb_center_cat(const HistogramSet& set, double eps, int max_iter) {
  if (!(eps > 0.0)) throw DomainError("stopping tolerance must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  Vec a = arithmetic_mean(set).probs();
  Vec g = normalized_geometric_mean(set).probs();
  CatCenter out;
  double gap = 0.5 * (a - g).lpNorm<1>();
  out.tv_gaps.push_back(gap);
  int it = 0;
  while (gap > eps && it < max_iter) {
    const Vec u = (a.array() * g.array()).sqrt();
    a = 0.5 * (a + g);
    g = u / u.sum();
    gap = 0.5 * (a - g).lpNorm<1>();
    out.tv_gaps.push_back(gap);
    ++it;
  }
  out.center = SimplexPoint::Normalized(a);
  out.diagnostics.iterations = it;
  out.diagnostics.final_gap = gap;
  out.diagnostics.residual = gap;
  out.diagnostics.converged = gap <= eps;
  out.diagnostics.elapsed_ns = ns_since(t0);
  return out;
}

UnnormalizedCenter unnormalized_center(const HistogramSet& set) {
  const Vec c = c_of_lambda(arithmetic_mean(set), normalized_geometric_mean(set), 0.0);
  return {c, c.sum()};
}

double kl_cat(const SimplexPoint& p, const SimplexPoint& q) {
  require_same_dim(p, q);
  return (p.probs().array() * (p.probs().array() / q.probs().array()).log()).sum();
}

double jeffreys_cat(const SimplexPoint& p, const SimplexPoint& q) {
  require_same_dim(p, q);
  return ((p.probs() - q.probs()).array() * (p.probs().array() / q.probs().array()).log()).sum();
}

double tv_cat(const SimplexPoint& p, const SimplexPoint& q) {
  require_same_dim(p, q);
  return 0.5 * (p.probs() - q.probs()).lpNorm<1>();
}

double jeffreys_loss_cat(const HistogramSet& set, const SimplexPoint& q) {
  double loss = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) loss += set.weight(i) * jeffreys_cat(set.points[i], q);
  return loss;
}

double approximation_factor(const HistogramSet& set, const SimplexPoint& candidate,
                            const SimplexPoint& reference) {
  const double ref = jeffreys_loss_cat(set, reference);
  if (!(ref > 0.0)) throw DomainError("approximation_factor: reference loss is zero");
  return jeffreys_loss_cat(set, candidate) / ref - 1.0;
}

}  // namespace jcenters

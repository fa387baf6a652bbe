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

#include "jcenters/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jcenters/errors.hpp"

namespace jcenters {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e rounded to nearest

// Piecewise starting point: branch-point series, log1p in the middle,
// asymptotic expansion for large x.
double w0_seed(double x) {
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

void ToleranceConfig::Validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (max_iter < 1) throw DomainError("max_iter must be at least 1");
}

double lambert_w0(double x, const ToleranceConfig& tol) {
  tol.Validate();
  if (std::isnan(x) || x < -kInvE) throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;
  if (std::isinf(x)) return x;

  double w = w0_seed(x);
  if (x > std::numbers::e) {
    // Solve w + log w = log x; avoids overflow of w * exp(w).
    const double lx = std::log(x);
    for (int it = 0; it < tol.max_iter; ++it) {
      const double f = w + std::log(w) - lx;
      const double fp = 1.0 + 1.0 / w;
      const double fpp = -1.0 / (w * w);
      const double step = f / (fp - 0.5 * f * fpp / fp);
      w -= step;
      if (std::abs(step) <= 0.25 * tol.rel_tol * w) break;
    }
    return w;
  }
  // Halley on w e^w - x.
  for (int it = 0; it < tol.max_iter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 <= 0.0) {
      w = -1.0 + 1e-12;
      continue;
    }
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 0.25 * tol.rel_tol * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double elliptic_k(double u, const ToleranceConfig& tol) {
  tol.Validate();
  if (!(std::abs(u) < 1.0)) throw DomainError("elliptic_k: modulus must satisfy |u| < 1");
  if (u == 0.0) return std::numbers::pi / 2.0;
  // Substituting t = tan(theta) and t = exp(s - knee) turns the defining
  // integral into 2 * int_0^inf ds / sqrt(1 + k'^2 + 2 k' cosh 2s) with
  // k'^2 = 1 - u^2. The integrand is smooth and monotone with a single knee at
  // s = -log(k') / 2, so near |u| = 1 no endpoint singularity has to be resolved.
  const double kp2 = (1.0 - u) * (1.0 + u);
  const double kp = std::sqrt(kp2);
  const double knee = -0.25 * std::log(kp2);
  auto integrand = [kp, kp2](double s) { return 1.0 / std::sqrt(1.0 + kp2 + 2.0 * kp * std::cosh(2.0 * s)); };
  // Beyond knee + 40 the integrand is below e^-40 relative to the plateau.
  const double nodes[3] = {0.0, knee, knee + 40.0};
  double k = 0.0;
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    double e = 0.0;
    k += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, nodes[i], nodes[i + 1], 15,
                                                                         tol.rel_tol, &e);
    err += e;
  }
  k *= 2.0;
  // The Kronrod estimate is pessimistic by several orders; only gross failures are reported.
  if (!(err <= 1e3 * tol.rel_tol * k)) {
    throw NumericalError("elliptic_k: quadrature error estimate " + std::to_string(err) + " above tolerance");
  }
  return k;
}

double scalar_agm(double x, double y, const ToleranceConfig& tol) {
  tol.Validate();
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("scalar_agm: arguments must be positive and finite");
  }
  double a = x;
  double g = y;
  for (int it = 0; it < tol.max_iter; ++it) {
    if (std::abs(a - g) <= tol.rel_tol * std::max(a, g)) return 0.5 * (a + g);
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  throw NumericalError("scalar_agm: no convergence within max_iter");
}

std::vector<double> agm_gap_sequence(double x, double y, const ToleranceConfig& tol) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("agm_gap_sequence: arguments must be positive");
  std::vector<double> gaps{std::abs(x - y)};
  double a = x;
  double g = y;
  for (int it = 0; it < tol.max_iter; ++it) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
    const double gap = std::abs(a - g);
    if (gap >= gaps.back()) break;
    gaps.push_back(gap);
    if (gap == 0.0) break;
  }
  return gaps;
}

}  // namespace jcenters

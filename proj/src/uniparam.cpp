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

#include "jcenters/uniparam.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace jcenters {

namespace {

// Stable log(1 + e^t).
double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }
double sigmoid(double t) { return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

// Root of fn on [a, b] where fn(a) and fn(b) differ in sign.
template <class Fn>
double solve_bracketed(Fn fn, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t max_iter = 300;
  const auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb,
                                                   boost::math::tools::eps_tolerance<double>(52), max_iter);
  if (max_iter >= 300) throw NumericalError("root finder exhausted its iteration budget");
  return 0.5 * (r.first + r.second);
}

// Walks from `start` in direction `dir` with doubling steps, halving toward
// a finite domain bound, until fn changes sign. Returns the bracket.
template <class Fn>
bool grow_bracket(const ScalarGenerator& gen, Fn fn, double start, double dir, double& a, double& b,
                  double& fa, double& fb) {
  double prev = start;
  double fprev = fn(prev);
  if (fprev == 0.0) {
    a = b = prev;
    fa = fb = 0.0;
    return true;
  }
  double step = std::max(1.0, std::abs(start));
  const double bound = dir > 0 ? gen.hi : gen.lo;
  for (int k = 0; k < 2000; ++k) {
    double next = prev + dir * step;
    if (std::isfinite(bound) && !(dir > 0 ? next < bound : next > bound)) next = 0.5 * (prev + bound);
    if (next == prev || !gen.contains(next)) return false;
    const double fnext = fn(next);
    // A saturated function never reaches the target: the value lies outside its range.
    if (fnext == fprev) return false;
    if ((fnext > 0) != (fprev > 0) || fnext == 0.0) {
      a = std::min(prev, next);
      b = std::max(prev, next);
      fa = a == prev ? fprev : fnext;
      fb = b == prev ? fprev : fnext;
      return true;
    }
    prev = next;
    fprev = fnext;
    step *= 2.0;
  }
  return false;
}

}  // namespace

ScalarGenerator quadratic_scalar() {
  return {"quadratic", [](double t) { return 0.5 * t * t; }, [](double t) { return t; },
          [](double) { return 1.0; }};
}

ScalarGenerator poisson_scalar() {
  return {"poisson", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
          [](double t) { return std::exp(t); }};
}

ScalarGenerator exponential_scalar() {
  ScalarGenerator g{"exponential", [](double t) { return -std::log(-t); }, [](double t) { return -1.0 / t; },
                    [](double t) { return 1.0 / (t * t); }};
  g.hi = 0.0;
  g.theta_ref = -1.0;
  return g;
}

ScalarGenerator bernoulli_scalar() {
  // sigma(t) sigma(-t) written without the cancelling 1 - sigma(t).
  return {"bernoulli", softplus, sigmoid, [](double t) {
            const double e = std::exp(-std::abs(t));
            return e / ((1.0 + e) * (1.0 + e));
          }};
}

double h_of(const ScalarGenerator& gen, double t) {
  if (!gen.contains(t)) throw DomainError("h_of: parameter outside the generator domain");
  if (t == gen.theta_ref) return 0.0;
  auto integrand = [&gen](double u) { return std::sqrt(gen.f_second(u)); };
  // Panels ref+-1, +-2, +-4, ... keep each piece on the scale of the
  // integrand, which may grow or decay exponentially away from the anchor.
  const double dir = t > gen.theta_ref ? 1.0 : -1.0;
  const double span = std::abs(t - gen.theta_ref);
  double a = gen.theta_ref;
  double val = 0.0;
  double err = 0.0;
  const double bound = dir > 0 ? gen.hi : gen.lo;
  for (double w = 1.0;; w *= 2.0) {
    // Toward a finite bound the integrand may blow up, so panels halve the remaining gap instead.
    double b = std::isfinite(bound) ? 0.5 * (a + bound) : gen.theta_ref + dir * w;
    if (std::abs(b - gen.theta_ref) >= span) b = t;
    double e = 0.0;
    val += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 20, 1e-13, &e);
    // The adaptive estimate never drops below ~4e-10 on very short panels;
    // a single Kronrod-minus-Gauss difference is the sharper bound there.
    const double kronrod = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 0, 0.0);
    const double gauss = boost::math::quadrature::gauss<double, 15>::integrate(integrand, a, b);
    err += std::min(e, std::abs(kronrod - gauss));
    if (b == t) break;
    a = b;
  }
  if (!(err <= 1e-10 * std::max(1.0, std::abs(val))) || !std::isfinite(val)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", err);
    throw NumericalError(std::string("h_of: quadrature error estimate ") + buf + " above 1e-10 relative");
  }
  return val;
}

double h_inverse(const ScalarGenerator& gen, double y) {
  if (y == 0.0) return gen.theta_ref;
  auto fn = [&gen, y](double t) { return h_of(gen, t) - y; };
  double a, b, fa, fb;
  if (!grow_bracket(gen, fn, gen.theta_ref, y > 0 ? 1.0 : -1.0, a, b, fa, fb)) {
    throw DomainError("h_inverse: value outside the range of h");
  }
  return solve_bracketed(fn, a, b, fa, fb);
}

double f_prime_inverse(const ScalarGenerator& gen, double y, double lo_hint, double hi_hint) {
  if (!gen.contains(lo_hint) || !gen.contains(hi_hint)) {
    throw DomainError("f_prime_inverse: bracket hints outside the domain");
  }
  auto fn = [&gen, y](double t) { return gen.f_prime(t) - y; };
  double fa = fn(lo_hint);
  double fb = fn(hi_hint);
  double a = lo_hint;
  double b = hi_hint;
  if ((fa > 0) == (fb > 0) && fa != 0.0 && fb != 0.0) {
    // f' is increasing: walk toward the sign change.
    if (!grow_bracket(gen, fn, fa > 0 ? lo_hint : hi_hint, fa > 0 ? -1.0 : 1.0, a, b, fa, fb)) {
      throw DomainError("f_prime_inverse: value outside the range of f'");
    }
  }
  return solve_bracketed(fn, a, b, fa, fb);
}

ScalarJfr jfr_center_1d(const ScalarGenerator& gen, const std::vector<double>& thetas,
                        const Vec& weights) {
  check_weights(weights, thetas.size());
  double right = 0.0;
  double mean_grad = 0.0;
  double lo = thetas.front();
  double hi = thetas.front();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!gen.contains(thetas[i])) throw DomainError("jfr_center_1d: parameter outside the domain");
    right += weights[static_cast<Eigen::Index>(i)] * thetas[i];
    mean_grad += weights[static_cast<Eigen::Index>(i)] * gen.f_prime(thetas[i]);
    lo = std::min(lo, thetas[i]);
    hi = std::max(hi, thetas[i]);
  }
  const double left = lo == hi ? lo : f_prime_inverse(gen, mean_grad, lo, hi);
  if (right == left) return {right, right, left};
  double center = h_inverse(gen, 0.5 * (h_of(gen, right) + h_of(gen, left)));
  // Keep the result inside the sided-centroid interval despite root-finder rounding.
  center = std::clamp(center, std::min(right, left), std::max(right, left));
  return {center, right, left};
}

GeneratorSpec as_generator(const ScalarGenerator& gen) {
  GeneratorSpec g;
  g.name = gen.name;
  g.dim = 1;
  g.separable = true;
  g.F = [gen](const Vec& t) { return gen.f(t[0]); };
  g.grad = [gen](const Vec& t) -> Vec { return Vec::Constant(1, gen.f_prime(t[0])); };
  g.grad_inv = [gen](const Vec& e) -> Vec {
    const double r = gen.theta_ref;
    const double a = gen.contains(r - 1.0) ? r - 1.0 : 0.5 * (r + gen.lo);
    const double b = gen.contains(r + 1.0) ? r + 1.0 : 0.5 * (r + gen.hi);
    return Vec::Constant(1, f_prime_inverse(gen, e[0], a, b));
  };
  g.in_domain = [gen](const Vec& t) { return gen.contains(t[0]); };
  return g;
}

}  // namespace jcenters

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

#include "jcenters/gauss_bregman.hpp"

#include <chrono>

namespace jcenters {

std::pair<Vec, Vec> gb_step(const GeneratorSpec& gen, const Vec& upper, const Vec& lower) {
  gen.require(upper, "gb_step");
  gen.require(lower, "gb_step");
  Vec a = 0.5 * (upper + lower);
  Vec m = gen.grad_inv(0.5 * (gen.grad(upper) + gen.grad(lower)));
  gen.require(a, "gb_step arithmetic iterate");
  gen.require(m, "gb_step quasi-arithmetic iterate");
  return {std::move(a), std::move(m)};
}

GBResult gb_pair(const GeneratorSpec& gen, const Vec& upper0, const Vec& lower0,
                 const GBOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw DomainError("gb_pair: need tol > 0 and max_iter >= 1");
  const auto start = std::chrono::steady_clock::now();
  GBResult out;
  Vec up = upper0;
  Vec lo = lower0;
  double gap = gen.norm(up - lo);
  out.gaps.push_back(gap);
  if (opts.keep_trace) out.trace.emplace_back(up, lo);
  int it = 0;
  while (gap > opts.tol && it < opts.max_iter) {
    std::tie(up, lo) = gb_step(gen, up, lo);
    ++it;
    const double next = gen.norm(up - lo);
    if (!(next < gap)) out.gap_monotone = false;
    gap = next;
    out.gaps.push_back(gap);
    if (opts.keep_trace) out.trace.emplace_back(up, lo);
  }
  out.center = up;
  out.converged = gap <= opts.tol;
  out.diagnostics.iterations = it;
  out.diagnostics.final_gap = gap;
  out.diagnostics.residual = gap;
  out.diagnostics.converged = out.converged;
  out.diagnostics.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
  return out;
}

GBResult gb_center(const GeneratorSpec& gen, const WeightedParamSet& set, const GBOptions& opts) {
  for (const auto& p : set.points) gen.require(p, "gb_center");
  return gb_pair(gen, right_bregman_centroid(set), quasi_arithmetic_center(gen, set), opts);
}

double gb_invariance_check(const GeneratorSpec& gen, const Vec& t1, const Vec& t2,
                           const GBOptions& opts) {
  const GBResult direct = gb_pair(gen, t1, t2, opts);
  const auto [a, m] = gb_step(gen, t1, t2);
  const GBResult shifted = gb_pair(gen, a, m, opts);
  return gen.norm(direct.center - shifted.center);
}

}  // namespace jcenters

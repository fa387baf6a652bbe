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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jcenters/errors.hpp"
#include "jcenters/special_functions.hpp"
#include "test_util.hpp"

namespace jcenters {
namespace {

using testing::uniform;

Vec v1(double x) { return Vec::Constant(1, x); }

TEST(GbStep, ArithmeticAndQuasiArithmetic) {
  const auto [a, m] = gb_step(burg_generator(1), v1(1.0), v1(4.0));
  EXPECT_DOUBLE_EQ(a[0], 2.5);
  EXPECT_NEAR(m[0], 1.6, 1e-15);
}

TEST(GbCenter, IdenticalPointsNeedNoIteration) {
  const Vec p = (Vec(2) << 0.7, 1.9).finished();
  const GBResult r = gb_center(shannon_generator(2), WeightedParamSet({p, p, p}));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.diagnostics.iterations, 0);
  EXPECT_LT((r.center - p).norm(), 1e-15);
}

TEST(GbCenter, BurgPairGivesGeometricMean) {
  // Arithmetic and harmonic means of 1 and 4 keep their product, so the limit is 2.
  const GBResult r = gb_center(burg_generator(1), WeightedParamSet({v1(1.0), v1(4.0)}), {1e-14, 100});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.center[0], 2.0, 1e-13);
}

TEST(GbCenter, ShannonPairGivesAgm) {
  const GBResult r = gb_center(shannon_generator(1), WeightedParamSet({v1(1.0), v1(4.0)}), {1e-14, 100});
  const double closed = std::numbers::pi / 4.0 * 4.5 / elliptic_k(0.5 / 4.5);
  EXPECT_NEAR(r.center[0], scalar_agm(2.5, 2.0), 1e-13);
  EXPECT_NEAR(r.center[0], closed, 1e-11);
}

TEST(GbCenter, ScalarGapAtLeastHalves) {
  std::mt19937_64 rng(21);
  for (const auto& gen : {burg_generator(1), shannon_generator(1)}) {
    for (int i = 0; i < 100; ++i) {
      const WeightedParamSet pts({v1(std::exp(uniform(rng, -3, 3))), v1(std::exp(uniform(rng, -3, 3)))},
                                 testing::random_weights(rng, 2));
      const GBResult r = gb_center(gen, pts, {1e-13, 200});
      ASSERT_TRUE(r.converged);
      for (std::size_t t = 0; t + 1 < r.gaps.size(); ++t) {
        EXPECT_LE(r.gaps[t + 1], 0.5 * r.gaps[t] * (1 + 1e-12) + 1e-15) << gen.name << " t=" << t;
      }
    }
  }
}

TEST(GbCenter, SeparableCoordinatesHalveIndependently) {
  std::mt19937_64 rng(22);
  const auto gen = shannon_generator(4);
  for (int i = 0; i < 20; ++i) {
    std::vector<Vec> pts;
    for (int k = 0; k < 3; ++k) {
      Vec p(4);
      for (int j = 0; j < 4; ++j) p[j] = std::exp(uniform(rng, -2, 2));
      pts.push_back(p);
    }
    const GBResult r = gb_center(gen, WeightedParamSet(pts), {1e-13, 200, true});
    ASSERT_TRUE(r.converged);
    for (std::size_t t = 0; t + 1 < r.trace.size(); ++t) {
      const Vec g0 = (r.trace[t].first - r.trace[t].second).cwiseAbs();
      const Vec g1 = (r.trace[t + 1].first - r.trace[t + 1].second).cwiseAbs();
      for (int j = 0; j < 4; ++j) EXPECT_LE(g1[j], 0.5 * g0[j] * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST(GbCenter, TraceLengthMatchesIterations) {
  const GBResult r =
      gb_center(burg_generator(2), WeightedParamSet({Vec::Ones(2), Vec::Constant(2, 9.0)}), {1e-10, 100, true});
  EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(r.diagnostics.iterations) + 1);
  EXPECT_EQ(r.gaps.size(), r.trace.size());
  EXPECT_TRUE(r.gap_monotone);
}

TEST(GbCenter, LimitLiesBetweenMeans) {
  std::mt19937_64 rng(23);
  const auto gen = burg_generator(1);
  for (int i = 0; i < 100; ++i) {
    const WeightedParamSet pts({v1(std::exp(uniform(rng, -3, 3))), v1(std::exp(uniform(rng, -3, 3))),
                                v1(std::exp(uniform(rng, -3, 3)))});
    const double a = right_bregman_centroid(pts)[0];
    const double h = quasi_arithmetic_center(gen, pts)[0];
    const double c = gb_center(gen, pts).center[0];
    EXPECT_GE(c, std::min(a, h) - 1e-12);
    EXPECT_LE(c, std::max(a, h) + 1e-12);
  }
}

TEST(GbCenter, IterationCapIsReported) {
  const GBResult r = gb_center(shannon_generator(1), WeightedParamSet({v1(1.0), v1(100.0)}), {1e-14, 1});
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.diagnostics.converged);
  EXPECT_EQ(r.diagnostics.iterations, 1);
  EXPECT_GT(r.diagnostics.final_gap, 1e-14);
}

TEST(GbCenter, RejectsBadOptionsAndDomain) {
  const WeightedParamSet pts({v1(1.0), v1(2.0)});
  EXPECT_THROW(gb_center(burg_generator(1), pts, {0.0, 10}), DomainError);
  EXPECT_THROW(gb_center(burg_generator(1), pts, {1e-8, 0}), DomainError);
  EXPECT_THROW(gb_step(burg_generator(1), v1(-1.0), v1(2.0)), DomainError);
}

TEST(GbInvariance, Examples) {
  EXPECT_EQ(gb_invariance_check(burg_generator(1), v1(3.0), v1(3.0)), 0.0);
  EXPECT_LT(gb_invariance_check(burg_generator(1), v1(1.0), v1(4.0), {1e-14, 100}), 1e-12);
}

TEST(GbInvariance, RandomSeparablePairs) {
  std::mt19937_64 rng(24);
  const auto gen = shannon_generator(3);
  for (int i = 0; i < 50; ++i) {
    Vec a(3), b(3);
    for (int j = 0; j < 3; ++j) {
      a[j] = std::exp(uniform(rng, -2, 2));
      b[j] = std::exp(uniform(rng, -2, 2));
    }
    EXPECT_LT(gb_invariance_check(gen, a, b, {1e-14, 200}), 1e-12);
  }
}

}  // namespace
}  // namespace jcenters

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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "jcenters/bench.hpp"
#include "jcenters/categorical.hpp"
#include "jcenters/gauss_bregman.hpp"
#include "jcenters/gaussian.hpp"
#include "jcenters/special_functions.hpp"
#include "jcenters/spd.hpp"
#include "jcenters/uniparam.hpp"
#include "test_util.hpp"

namespace jcenters {
namespace {

using testing::random_spd;
using testing::uniform;
using testing::uniform_int;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
  void info(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  notes.push_back(std::string(ok ? "ok    " : "MISS  ") + buf);
  pass = pass && ok;
}

void Outcome::info(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  notes.push_back(std::string("info  ") + buf);
}

bool within_factor(double value, double target, double factor) {
  return value >= target / factor && value <= target * factor;
}

// True if the sequence is non-decreasing except for at most one adjacent inversion.
bool nearly_nondecreasing(const std::vector<double>& xs) {
  int inversions = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) inversions += xs[i + 1] < xs[i] ? 1 : 0;
  return inversions <= 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Deterministic alpha = 0.1 reproduction.

Outcome crit_alpha_point() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto row = run_table2({1e-1}, 1e-10, 1e-8, false).front();
  const double secs = seconds_since(t0);
  o.check(within_factor(row.jfr_info_eps, 6.882e-09, 3.0), "JFR info eps %.4e vs 6.882e-09 (x3)", row.jfr_info_eps);
  o.check(within_factor(row.jfr_tv, 2.495e-05, 3.0), "JFR TV %.4e vs 2.495e-05 (x3)", row.jfr_tv);
  o.check(within_factor(row.gb_info_eps, 1.338e-06, 3.0), "GB info eps %.4e vs 1.338e-06 (x3)", row.gb_info_eps);
  o.check(within_factor(row.gb_tv, 3.480e-04, 3.0), "GB TV %.4e vs 3.480e-04 (x3)", row.gb_tv);
  o.check(secs < 1.0, "runtime %.3f s < 1 s", secs);

  // Diagnostic: the published GB figures match the first iterate of the double
  // sequence rather than its converged limit.
  const HistogramSet set = table2_input(1e-1);
  const SimplexPoint ref = jeffreys_centroid_cat(set).center;
  const CatCenter first = gb_center_cat(set, 1e-8, 1);
  o.info("GB stopped after one step: info eps %.4e, TV %.4e (converged GB took %d steps)",
         approximation_factor(set, first.center, ref), tv_cat(first.center, ref),
         gb_center_cat(set).diagnostics.iterations);
  return o;
}

// 2. Trend over alpha in {1e-1, ..., 1e-8}.

Outcome crit_alpha_trend() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> alphas;
  for (int k = 1; k <= 8; ++k) alphas.push_back(std::pow(10.0, -k));
  const auto rows = run_table2(alphas, 1e-10, 1e-8, false);
  const double secs = seconds_since(t0);
  std::vector<double> jfr, gb;
  for (const auto& r : rows) {
    jfr.push_back(r.jfr_info_eps);
    gb.push_back(r.gb_info_eps);
  }
  o.check(nearly_nondecreasing(jfr), "JFR info eps non-decreasing in -log alpha (<= 1 inversion)");
  o.check(nearly_nondecreasing(gb), "GB info eps non-decreasing in -log alpha (<= 1 inversion)");
  o.check(within_factor(rows[2].jfr_info_eps, 6.262e-04, 3.0), "JFR info eps at 1e-3: %.4e vs 6.262e-04 (x3)",
          rows[2].jfr_info_eps);
  o.check(secs < 5.0, "runtime %.3f s < 5 s", secs);
  for (const auto& r : rows) {
    o.info("alpha %.0e  JFR %.4e  GB %.4e", r.alpha, r.jfr_info_eps, r.gb_info_eps);
  }
  return o;
}

// 3. Dirichlet envelope at d = 16.

Outcome crit_dirichlet_envelope() {
  Outcome o;
  RunConfig config;
  config.dims = {16};
  config.trials = 1000;
  config.seed = 42;
  config.timing = false;
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = run_table1(config);
  const double secs = seconds_since(t0);
  double jfr = 0.0, gb = 0.0;
  for (const auto& r : records) {
    if (r.method == Method::kJfr) jfr = r.avg_info_eps;
    if (r.method == Method::kGb) gb = r.avg_info_eps;
  }
  o.check(jfr >= 1.2e-05 && jfr <= 1.1e-04, "avg JFR info eps %.4e in [1.2e-05, 1.1e-04]", jfr);
  o.check(gb >= 4.6e-04 && gb <= 4.2e-03, "avg GB info eps %.4e in [4.6e-04, 4.2e-03]", gb);
  o.check(secs < 60.0, "runtime %.2f s < 60 s", secs);

  RunConfig one_step = config;
  one_step.gb_max_iter = 1;
  double gb1 = 0.0;
  try {
    for (const auto& r : run_table1(one_step)) {
      if (r.method == Method::kGb) gb1 = r.avg_info_eps;
    }
    o.info("GB stopped after one step: avg info eps %.4e", gb1);
  } catch (const std::exception& e) {
    o.info("GB one-step diagnostic unavailable: %s", e.what());
  }
  return o;
}

// Shared random categorical instances for criteria 4 and 5.

std::vector<HistogramSet> categorical_instances() {
  std::mt19937_64 rng(20260401);
  std::vector<HistogramSet> sets;
  for (int i = 0; i < 200; ++i) {
    const int d = uniform_int(rng, 2, 64);
    const int n = uniform_int(rng, 2, 8);
    std::vector<SimplexPoint> rows;
    for (int k = 0; k < n; ++k) rows.push_back(random_histogram(rng, d));
    sets.emplace_back(std::move(rows), testing::random_weights(rng, n));
  }
  return sets;
}

// 4. Fixed-point residuals of the numerical centroid.

Outcome crit_fixed_point(const std::vector<HistogramSet>& sets) {
  Outcome o;
  double worst_fp = 0.0, worst_mass = 0.0;
  for (const auto& s : sets) {
    const auto r = jeffreys_centroid_cat(s, 1e-10);
    worst_fp = std::max(worst_fp, r.fixed_point_residual);
    worst_mass = std::max(worst_mass, r.mass_residual);
  }
  o.check(worst_fp <= 1e-6, "max |lambda + KL(c:g)| = %.3e <= 1e-6", worst_fp);
  o.check(worst_mass <= 1e-8, "max |sum c - 1| = %.3e <= 1e-8", worst_mass);
  return o;
}

// Loss of q against the set, evaluated on raw arrays for the grid search.
double raw_loss(const std::vector<Vec>& p, const std::vector<Vec>& logp, const Vec& w, const double q[3],
                const double logq[3]) {
  double loss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += (p[i][j] - q[j]) * (logp[i][j] - logq[j]);
    loss += w[static_cast<Eigen::Index>(i)] * s;
  }
  return loss;
}

// 5. Optimality ordering plus a d = 3 grid oracle at resolution 2e-4.

Outcome crit_optimality(const std::vector<HistogramSet>& sets) {
  Outcome o;
  double worst_jfr = 0.0, worst_gb = 0.0;
  for (const auto& s : sets) {
    const double lj = jeffreys_loss_cat(s, jeffreys_centroid_cat(s).center);
    worst_jfr = std::min(worst_jfr, jeffreys_loss_cat(s, jfr_center_cat(s)) - lj);
    worst_gb = std::min(worst_gb, jeffreys_loss_cat(s, gb_center_cat(s).center) - lj);
  }
  o.check(worst_jfr >= -1e-12, "min L(JFR) - L(Jeffreys) = %.3e >= -1e-12", worst_jfr);
  o.check(worst_gb >= -1e-12, "min L(GB) - L(Jeffreys) = %.3e >= -1e-12", worst_gb);

  std::mt19937_64 rng(77);
  constexpr int kSteps = 5000;  // resolution 2e-4
  constexpr double kSlack = 1e-10;
  std::vector<double> logs(kSteps + 1);
  for (int k = 1; k <= kSteps; ++k) logs[static_cast<std::size_t>(k)] = std::log(static_cast<double>(k) / kSteps);
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 3; ++trial) {
    const int n = uniform_int(rng, 2, 4);
    std::vector<SimplexPoint> rows;
    for (int k = 0; k < n; ++k) rows.push_back(random_histogram(rng, 3));
    const HistogramSet set(rows, testing::random_weights(rng, n));
    std::vector<Vec> p, logp;
    for (const auto& r : rows) {
      p.push_back(r.probs());
      logp.push_back(r.probs().array().log().matrix());
    }
    const double lj = jeffreys_loss_cat(set, jeffreys_centroid_cat(set).center);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < kSteps; ++i) {
      for (int j = 1; i + j < kSteps; ++j) {
        const int k = kSteps - i - j;
        const double q[3] = {static_cast<double>(i) / kSteps, static_cast<double>(j) / kSteps,
                             static_cast<double>(k) / kSteps};
        const double lq[3] = {logs[static_cast<std::size_t>(i)], logs[static_cast<std::size_t>(j)],
                              logs[static_cast<std::size_t>(k)]};
        best = std::min(best, raw_loss(p, logp, set.weights, q, lq));
      }
    }
    worst_gap = std::min(worst_gap, best - lj);
  }
  o.check(worst_gap >= -kSlack, "grid minimum minus centroid loss = %.3e >= -%.0e", worst_gap, kSlack);
  return o;
}

// 6. Scalar inductive means.

Outcome crit_scalar_means() {
  Outcome o;
  std::mt19937_64 rng(606);
  const auto burg = burg_generator(1);
  const auto shannon = shannon_generator(1);
  double worst_geo = 0.0, worst_agm = 0.0, worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = uniform(rng, 0.1, 10.0);
    const double y = uniform(rng, 0.1, 10.0);
    const WeightedParamSet pts({Vec::Constant(1, x), Vec::Constant(1, y)});
    const GBResult g = gb_center(burg, pts, {1e-15, 100});
    worst_geo = std::max(worst_geo, std::abs(g.center[0] - std::sqrt(x * y)));
    for (std::size_t t = 0; t + 1 < g.gaps.size(); ++t) {
      if (g.gaps[t] < 1e-5) break;
      worst_ratio = std::max(worst_ratio, g.gaps[t + 1] / (g.gaps[t] * g.gaps[t]));
    }
    const double a = 0.5 * (x + y);
    const double gm = std::sqrt(x * y);
    const double closed = std::numbers::pi / 4.0 * (a + gm) / elliptic_k((a - gm) / (a + gm));
    const double agm = gb_center(shannon, pts, {1e-15, 100}).center[0];
    worst_agm = std::max(worst_agm, std::abs(agm - closed));
  }
  o.check(worst_geo <= 1e-12, "Burg GB vs sqrt(xy): max error %.3e <= 1e-12", worst_geo);
  // For inputs >= 0.1 the gap map g' = g^2 / (2 (a + h)) has constant <= 2.5.
  o.check(worst_ratio <= 2.5, "quadratic gap decay: max g_{t+1}/g_t^2 = %.3e <= 2.5", worst_ratio);
  o.check(worst_agm <= 1e-10, "Shannon GB vs elliptic AGM: max error %.3e <= 1e-10", worst_agm);
  return o;
}

// 7. SPD suite.

SpdMatrix congruence(const Mat& a, const SpdMatrix& x) { return SpdMatrix(a * x.matrix() * a.transpose()); }

Outcome crit_spd() {
  Outcome o;
  std::mt19937_64 rng(707);
  double ric = 0.0, eqd = 0.0, nak = 0.0, inv = 0.0, cong = 0.0, eig = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = uniform_int(rng, 1, 8);
    const SpdMatrix x = random_spd(rng, d);
    const SpdMatrix y = random_spd(rng, d);
    const SpdMatrix z = geometric_mean(x, y);
    ric = std::max(ric, riccati_residual(z, x, y));
    eqd = std::max(eqd, std::abs(trace_metric_distance(x, z) - trace_metric_distance(z, y)));
    const auto n = nakamura_ah(x, y);
    nak = std::max(nak, (n.limit.matrix() - z.matrix()).norm() / z.matrix().norm());
    inv = std::max(inv, g_invariance_residual(x, y));
    const double s = symmetrized_logdet(x, y);
    const double scale = std::max(1.0, s);
    const Mat a = testing::random_invertible(rng, d);
    cong = std::max(cong, std::abs(symmetrized_logdet(congruence(a, x), congruence(a, y)) - s) / scale);
    cong = std::max(cong, std::abs(symmetrized_logdet(SpdMatrix(x.inverse()), SpdMatrix(y.inverse())) - s) / scale);
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(x.matrix(), y.matrix());
    const auto l = ges.eigenvalues().array();
    eig = std::max(eig, std::abs(s - (l.sqrt() - l.rsqrt()).square().sum()) / scale);
  }
  o.check(ric <= 1e-10, "Riccati residual %.3e <= 1e-10", ric);
  o.check(eqd <= 1e-9, "trace-metric equidistance %.3e <= 1e-9", eqd);
  o.check(nak <= 1e-8, "Nakamura limit vs geometric mean %.3e <= 1e-8", nak);
  o.check(inv <= 1e-9, "arithmetic-harmonic invariance residual %.3e <= 1e-9", inv);
  o.check(cong <= 1e-9, "S_ld congruence/inversion invariance %.3e <= 1e-9", cong);
  o.check(eig <= 1e-10, "S_ld eigenvalue identity %.3e <= 1e-10", eig);
  return o;
}

// 8. Same-mean coincidence.

constexpr GBOptions kMvnGb{1e-11, 200};

SpdSet covariances(const GaussianSet& set) {
  std::vector<SpdMatrix> c;
  for (const auto& p : set.points) c.push_back(p.cov);
  return SpdSet(c, set.weights);
}

Outcome crit_same_mean() {
  Outcome o;
  std::mt19937_64 rng(808);
  double pair = 0.0, grad = 0.0;
  for (int d : {2, 3, 5}) {
    for (int rep = 0; rep < 10; ++rep) {
      const int n = uniform_int(rng, 2, 6);
      const Vec m = testing::normal_vec(rng, d);
      std::vector<GaussianParam> pts;
      for (int k = 0; k < n; ++k) pts.emplace_back(m, random_spd(rng, d, 0.3, 3.0));
      const GaussianSet set(pts, testing::random_weights(rng, n));
      const Mat jc = jeffreys_centroid_centered(covariances(set), m).cov.matrix();
      const Mat gb = gb_center_mvn(set, kMvnGb).center.cov.matrix();
      const Mat jfr = jfr_center_mvn(set).cov.matrix();
      pair = std::max({pair, (jc - gb).norm(), (jc - jfr).norm(), (gb - jfr).norm()});
      grad = std::max(grad, jeffreys_residual_mvn(set, GaussianParam(m, SpdMatrix(jc))));
    }
  }
  o.check(pair <= 1e-8, "pairwise covariance agreement %.3e <= 1e-8", pair);
  o.check(grad <= 1e-8, "finite-difference loss gradient %.3e <= 1e-8", grad);
  return o;
}

// 9. Fisher-Rao midpoint.

Outcome crit_fr_midpoint() {
  Outcome o;
  std::mt19937_64 rng(909);
  double eqd = 0.0, reduce = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = uniform_int(rng, 1, 3);
    const auto fr = fisher_rao_midpoint_mvn(testing::random_gaussian(rng, d), testing::random_gaussian(rng, d));
    eqd = std::max(eqd, std::abs(trace_metric_distance(fr.g0, fr.g) - trace_metric_distance(fr.g, fr.g1)));
  }
  for (int i = 0; i < 30; ++i) {
    const int d = uniform_int(rng, 1, 3);
    const Vec m = testing::normal_vec(rng, d);
    const SpdMatrix s0 = random_spd(rng, d);
    const SpdMatrix s1 = random_spd(rng, d);
    const auto fr = fisher_rao_midpoint_mvn(GaussianParam(m, s0), GaussianParam(m, s1));
    reduce = std::max({reduce, (fr.midpoint.cov.matrix() - geometric_mean(s0, s1).matrix()).norm(),
                       (fr.midpoint.mean - m).norm()});
  }
  o.check(eqd <= 1e-9, "embedded equidistance %.3e <= 1e-9", eqd);
  o.check(reduce <= 1e-8, "same-mean reduction to geometric mean %.3e <= 1e-8", reduce);
  return o;
}

// 10. Affine equivariance.

double param_gap(const GaussianParam& p, const GaussianParam& q) {
  return std::max((p.mean - q.mean).norm(), (p.cov.matrix() - q.cov.matrix()).norm());
}

Outcome crit_affine() {
  Outcome o;
  std::mt19937_64 rng(1010);
  double jfr = 0.0, gb = 0.0, jc = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int d = uniform_int(rng, 1, 3);
    const int n = uniform_int(rng, 2, 4);
    const Mat a = testing::random_invertible(rng, d);
    const Vec b = testing::normal_vec(rng, d);
    std::vector<GaussianParam> pts, mapped;
    for (int k = 0; k < n; ++k) {
      pts.push_back(testing::random_gaussian(rng, d));
      mapped.push_back(affine_map(pts.back(), a, b));
    }
    const Vec w = testing::random_weights(rng, n);
    const GaussianSet set(pts, w), mset(mapped, w);
    jfr = std::max(jfr, param_gap(jfr_center_mvn(mset), affine_map(jfr_center_mvn(set), a, b)));
    gb = std::max(gb, param_gap(gb_center_mvn(mset, kMvnGb).center,
                                affine_map(gb_center_mvn(set, kMvnGb).center, a, b)));

    const Vec m = testing::normal_vec(rng, d);
    std::vector<SpdMatrix> covs, mcovs;
    for (int k = 0; k < n; ++k) {
      covs.push_back(random_spd(rng, d));
      mcovs.push_back(congruence(a, covs.back()));
    }
    jc = std::max(jc, param_gap(jeffreys_centroid_centered(SpdSet(mcovs, w), a * m + b),
                                affine_map(jeffreys_centroid_centered(SpdSet(covs, w), m), a, b)));
  }
  o.check(jfr <= 1e-8, "JFR center %.3e <= 1e-8", jfr);
  o.check(gb <= 1e-8, "GB center %.3e <= 1e-8", gb);
  o.check(jc <= 1e-8, "same-mean Jeffreys centroid %.3e <= 1e-8", jc);
  return o;
}

// 11. Cross-module consistency.

Outcome crit_cross_module() {
  Outcome o;
  std::mt19937_64 rng(1111);
  double sym = 0.0, cat = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int d = uniform_int(rng, 1, 4);
    const GaussianParam p = testing::random_gaussian(rng, d);
    const GaussianParam q = testing::random_gaussian(rng, d);
    const double j = jeffreys_mvn(p, q);
    const double s = symmetrized_bregman(mvn_generator(d), flatten(mvn_to_natural(p)), flatten(mvn_to_natural(q)));
    sym = std::max(sym, std::abs(j - s) / std::max(1.0, j));
  }
  const auto bern = bernoulli_scalar();
  for (int i = 0; i < 50; ++i) {
    const int n = uniform_int(rng, 2, 5);
    const HistogramSet set = testing::random_histogram_set(rng, 2, n);
    std::vector<double> ts;
    for (const auto& p : set.points) ts.push_back(cat_to_natural(p)[0]);
    const SimplexPoint via = cat_from_natural(Vec::Constant(1, jfr_center_1d(bern, ts, set.weights).center));
    cat = std::max(cat, (via.probs() - jfr_center_cat(set).probs()).cwiseAbs().maxCoeff());
  }
  o.check(sym <= 1e-9, "Gaussian Jeffreys vs symmetrized Bregman %.3e <= 1e-9", sym);
  o.check(cat <= 1e-8, "two-bin JFR via scalar path vs closed form %.3e <= 1e-8", cat);
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

int run_all() {
  const auto sets = categorical_instances();
  const std::vector<Criterion> criteria = {
      {"alpha = 0.1 reproduction", crit_alpha_point},
      {"alpha sweep trend", crit_alpha_trend},
      {"Dirichlet envelope at d = 16", crit_dirichlet_envelope},
      {"Jeffreys fixed point", [&] { return crit_fixed_point(sets); }},
      {"optimality ordering and grid oracle", [&] { return crit_optimality(sets); }},
      {"scalar inductive means", crit_scalar_means},
      {"SPD suite", crit_spd},
      {"same-mean coincidence", crit_same_mean},
      {"Fisher-Rao midpoint", crit_fr_midpoint},
      {"affine equivariance", crit_affine},
      {"cross-module consistency", crit_cross_module},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.check(false, "threw: %s", e.what());
    }
    std::printf("[%s] AC%zu %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, seconds_since(t0));
    for (const auto& note : o.notes) std::printf("         %s\n", note.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace jcenters

int main() { return jcenters::run_all(); }

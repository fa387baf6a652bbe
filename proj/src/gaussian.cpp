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

#include "jcenters/gaussian.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <cmath>
#include <numbers>
#include <string>

namespace jcenters {

namespace {

Mat llt_inverse(const Mat& m, const char* what) {
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw DomainError(std::string(what) + ": matrix is not positive definite");
  return llt.solve(Mat::Identity(m.rows(), m.cols()));
}

void require_dim(const GaussianParam& p, const GaussianParam& q) {
  if (p.dim() != q.dim()) throw DomainError("Gaussians differ in dimension");
}

// Horizontal generator [[-B, x, 0], [x^T, 0, -x^T], [0, -x, B]].
Mat horizontal_generator(const Vec& x, const Mat& b) {
  const int d = static_cast<int>(x.size());
  Mat a = Mat::Zero(2 * d + 1, 2 * d + 1);
  a.topLeftCorner(d, d) = -b;
  a.block(0, d, d, 1) = x;
  a.block(d, 0, 1, d) = x.transpose();
  a.block(d, d + 1, 1, d) = -x.transpose();
  a.block(d + 1, d, d, 1) = -x;
  a.bottomRightCorner(d, d) = b;
  return a;
}

// Projection of a raw embedded matrix without constructing SpdMatrix.
std::pair<Vec, Mat> project_raw(const Mat& g, int d) {
  const Mat sigma = llt_inverse(g.topLeftCorner(d, d), "embedded projection");
  return {sigma * g.block(0, d, d, 1), sigma};
}

// Residual of the shooting problem exp(A(x, B)) -> (m1, T1), unknowns (x, upper(B)).
struct ShootingFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Vec;
  using ValueType = Vec;
  using JacobianType = Mat;

  int d = 0;
  Vec m1;
  Mat t1;

  int inputs() const { return d + d * (d + 1) / 2; }
  int values() const { return inputs(); }

  Mat generator(const Vec& v) const {
    return horizontal_generator(v.head(d), sym_unflatten(v.tail(d * (d + 1) / 2), d));
  }

  int operator()(const Vec& v, Vec& r) const {
    const auto [m, s] = project_raw(sym_exp(generator(v)), d);
    r.resize(values());
    r.head(d) = m - m1;
    r.tail(d * (d + 1) / 2) = sym_flatten(s - t1);
    return 0;
  }
};

}  // namespace

GaussianParam::GaussianParam(Vec mu, SpdMatrix sigma) : mean(std::move(mu)), cov(std::move(sigma)) {
  if (mean.size() != cov.dim()) throw DomainError("mean and covariance dimensions differ");
  if (!mean.allFinite()) throw DomainError("mean has non-finite entries");
}

MvnNatural mvn_to_natural(const GaussianParam& p) {
  const Mat prec = p.cov.inverse();
  return {prec * p.mean, -0.5 * prec};
}

GaussianParam mvn_from_natural(const MvnNatural& t) {
  const Mat sigma = llt_inverse(-2.0 * t.theta_M, "natural parameter");
  return GaussianParam(sigma * t.theta_v, SpdMatrix(sigma));
}

MvnMoment mvn_to_moment(const GaussianParam& p) {
  return {p.mean, p.cov.matrix() + p.mean * p.mean.transpose()};
}

GaussianParam mvn_from_moment(const MvnMoment& e) {
  return GaussianParam(e.eta_v, SpdMatrix(e.eta_M - e.eta_v * e.eta_v.transpose()));
}

int mvn_flat_dim(int d) { return d + d * (d + 1) / 2; }

Vec flatten(const MvnNatural& t) {
  Vec v(mvn_flat_dim(static_cast<int>(t.theta_v.size())));
  v << t.theta_v, sym_flatten(t.theta_M);
  return v;
}

Vec flatten(const MvnMoment& e) {
  Vec v(mvn_flat_dim(static_cast<int>(e.eta_v.size())));
  v << e.eta_v, sym_flatten(e.eta_M);
  return v;
}

MvnNatural unflatten_natural(const Vec& v, int d) {
  if (v.size() != mvn_flat_dim(d)) throw DomainError("flattened natural parameter has the wrong length");
  return {v.head(d), sym_unflatten(v.tail(d * (d + 1) / 2), d)};
}

MvnMoment unflatten_moment(const Vec& v, int d) {
  if (v.size() != mvn_flat_dim(d)) throw DomainError("flattened moment parameter has the wrong length");
  return {v.head(d), sym_unflatten(v.tail(d * (d + 1) / 2), d)};
}

GeneratorSpec mvn_generator(int d) {
  GeneratorSpec g;
  g.name = "mvn";
  g.dim = mvn_flat_dim(d);
  g.separable = false;
  g.metric.resize(g.dim);
  g.metric << Vec::Ones(d), sym_metric(d);
  g.F = [d](const Vec& v) {
    const MvnNatural t = unflatten_natural(v, d);
    Eigen::LLT<Mat> llt(-t.theta_M);
    if (llt.info() != Eigen::Success) throw DomainError("mvn generator: outside the domain");
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    // -1/4 theta_v^T theta_M^{-1} theta_v = 1/4 theta_v^T (-theta_M)^{-1} theta_v
    return 0.25 * t.theta_v.dot(llt.solve(t.theta_v)) - 0.5 * logdet +
           0.5 * d * std::log(std::numbers::pi);
  };
  g.grad = [d](const Vec& v) -> Vec {
    const MvnNatural t = unflatten_natural(v, d);
    const Mat sigma = llt_inverse(-2.0 * t.theta_M, "mvn gradient");
    const Vec mu = sigma * t.theta_v;
    return flatten(MvnMoment{mu, sigma + mu * mu.transpose()});
  };
  g.grad_inv = [d](const Vec& v) -> Vec {
    const MvnMoment e = unflatten_moment(v, d);
    const Mat prec = llt_inverse(e.eta_M - e.eta_v * e.eta_v.transpose(), "mvn inverse gradient");
    return flatten(MvnNatural{prec * e.eta_v, -0.5 * prec});
  };
  g.in_domain = [d](const Vec& v) {
    if (v.size() != mvn_flat_dim(d) || !v.allFinite()) return false;
    Eigen::LLT<Mat> llt(-sym_unflatten(v.tail(d * (d + 1) / 2), d));
    return llt.info() == Eigen::Success;
  };
  return g;
}

double kl_mvn(const GaussianParam& p, const GaussianParam& q) {
  require_dim(p, q);
  const Mat qi = q.cov.inverse();
  const Vec dm = q.mean - p.mean;
  return 0.5 * ((qi * p.cov.matrix()).trace() + dm.dot(qi * dm) - p.dim() + q.cov.log_det() -
                p.cov.log_det());
}

double jeffreys_mvn(const GaussianParam& p, const GaussianParam& q) {
  require_dim(p, q);
  const Mat pi = p.cov.inverse();
  const Mat qi = q.cov.inverse();
  const Vec dm = q.mean - p.mean;
  return 0.5 * (dm.dot((pi + qi) * dm) + (pi * q.cov.matrix()).trace() + (qi * p.cov.matrix()).trace() -
                2.0 * p.dim());
}

double jeffreys_loss_mvn(const GaussianSet& set, const GaussianParam& q) {
  double loss = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) loss += set.weight(i) * jeffreys_mvn(set.points[i], q);
  return loss;
}

WeightedParamSet natural_set(const GaussianSet& set) {
  std::vector<Vec> pts;
  pts.reserve(set.size());
  for (const auto& p : set.points) {
    if (p.dim() != set.points.front().dim()) throw DomainError("Gaussian set mixes dimensions");
    pts.push_back(flatten(mvn_to_natural(p)));
  }
  return WeightedParamSet(std::move(pts), set.weights);
}

SidedCentroids sided_kl_centroids_mvn(const GaussianSet& set) {
  const int d = set.points.front().dim();
  const GeneratorSpec gen = mvn_generator(d);
  const WeightedParamSet nat = natural_set(set);
  return {unflatten_natural(right_bregman_centroid(nat), d),
          unflatten_natural(quasi_arithmetic_center(gen, nat), d)};
}

Mat embed_mvn(const GaussianParam& p) {
  const int d = p.dim();
  const int n = 2 * d + 1;
  Mat m = Mat::Identity(n, n);
  m.block(d, 0, 1, d) = p.mean.transpose();
  m.block(d + 1, d, d, 1) = -p.mean;
  m.block(d + 1, 0, d, d) = -0.5 * p.mean * p.mean.transpose();
  Mat core = Mat::Zero(n, n);
  core.topLeftCorner(d, d) = p.cov.inverse();
  core(d, d) = 1.0;
  core.bottomRightCorner(d, d) = p.cov.matrix();
  return m * core * m.transpose();
}

GaussianParam project_embedded(const Mat& g, int d) {
  const auto [mu, sigma] = project_raw(g, d);
  return GaussianParam(mu, SpdMatrix(sigma));
}

FisherRaoMidpoint fisher_rao_midpoint_mvn(const GaussianParam& p0, const GaussianParam& p1) {
  require_dim(p0, p1);
  const int d = p0.dim();
  const int n = 2 * d + 1;

  // Work in the frame where p0 is standard: p1 -> (L0^{-1}(mu1 - mu0), L0^{-1} S1 L0^{-T}).
  const Eigen::LLT<Mat> llt(p0.cov.matrix());
  const Mat l0 = llt.matrixL();
  const Mat l0i = l0.triangularView<Eigen::Lower>().solve(Mat::Identity(d, d));
  ShootingFunctor f;
  f.d = d;
  f.m1 = l0i * (p1.mean - p0.mean);
  f.t1 = l0i * p1.cov.matrix() * l0i.transpose();
  f.t1 = 0.5 * (f.t1 + f.t1.transpose());

  // Start from the logarithm of the embedded target, keeping its horizontal part.
  const Mat lg = sym_log(embed_mvn(GaussianParam(f.m1, SpdMatrix(f.t1))));
  Vec v(f.inputs());
  v << lg.block(0, d, d, 1), sym_flatten(lg.bottomRightCorner(d, d));

  Vec r;
  f(v, r);
  FisherRaoMidpoint out;
  out.evaluations = 1;
  if (r.lpNorm<Eigen::Infinity>() > 1e-15) {
    Eigen::NumericalDiff<ShootingFunctor, Eigen::Central> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ShootingFunctor, Eigen::Central>> lm(nd);
    lm.parameters.ftol = 1e-16;
    lm.parameters.xtol = 1e-16;
    lm.parameters.maxfev = 400 * (f.inputs() + 1);
    lm.minimize(v);
    out.evaluations += static_cast<int>(lm.nfev);
    f(v, r);
  }
  out.shooting_residual = r.lpNorm<Eigen::Infinity>();
  const double scale = std::max({1.0, f.m1.lpNorm<Eigen::Infinity>(), f.t1.lpNorm<Eigen::Infinity>()});
  if (!(out.shooting_residual <= 1e-10 * scale)) {
    throw NumericalError("fisher_rao_midpoint_mvn: geodesic shooting did not converge (residual " +
                         std::to_string(out.shooting_residual) + ")");
  }

  const Mat a = f.generator(v);
  const Mat half = sym_exp(0.5 * a);
  const auto [m, s] = project_raw(half, d);
  out.midpoint = GaussianParam(l0 * m + p0.mean, SpdMatrix(l0 * s * l0.transpose()));

  // Lift back to the original frame by the congruence that maps I to embed(p0).
  Mat lift = Mat::Identity(n, n);
  lift.block(d, 0, 1, d) = p0.mean.transpose();
  lift.block(d + 1, d, d, 1) = -p0.mean;
  lift.block(d + 1, 0, d, d) = -0.5 * p0.mean * p0.mean.transpose();
  Mat frame = Mat::Zero(n, n);
  frame.topLeftCorner(d, d) = l0i.transpose();
  frame(d, d) = 1.0;
  frame.bottomRightCorner(d, d) = l0;
  const Mat lam = lift * frame;
  out.g0 = lam * lam.transpose();
  out.g1 = lam * sym_exp(a) * lam.transpose();
  out.g = lam * half * lam.transpose();
  out.distance = 0.5 * a.norm();
  return out;
}

GaussianParam jfr_center_mvn(const GaussianSet& set) {
  const SidedCentroids sc = sided_kl_centroids_mvn(set);
  return fisher_rao_midpoint_mvn(mvn_from_natural(sc.right), mvn_from_natural(sc.left)).midpoint;
}

GaussianCenter gb_center_mvn(const GaussianSet& set, const GBOptions& opts) {
  const int d = set.points.front().dim();
  const GBResult r = gb_center(mvn_generator(d), natural_set(set), opts);
  return {mvn_from_natural(unflatten_natural(r.center, d)), r.diagnostics};
}

GaussianParam jeffreys_centroid_centered(const SpdSet& covs, const Vec& mean) {
  return GaussianParam(mean, sld_centroid(covs));
}

double jeffreys_residual_mvn(const GaussianSet& set, const GaussianParam& q) {
  return energy_grad_residual(mvn_generator(q.dim()), natural_set(set), flatten(mvn_to_natural(q)));
}

GaussianParam affine_map(const GaussianParam& p, const Mat& a, const Vec& b) {
  return GaussianParam(a * p.mean + b, SpdMatrix(a * p.cov.matrix() * a.transpose()));
}

}  // namespace jcenters

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

#include "jcenters/spd.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <string>

namespace jcenters {

namespace {

Eigen::SelfAdjointEigenSolver<Mat> eig(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return es;
}

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

SpdMatrix::SpdMatrix(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("SPD matrix must be square and nonempty");
  if (!m.allFinite()) throw DomainError("SPD matrix has non-finite entries");
  const double scale = m.norm();
  if ((m - m.transpose()).norm() > 1e-8 * scale) throw DomainError("matrix is not symmetric");
  m_ = sym(m);
  auto es = eig(m_);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  const double lo = evals_.minCoeff();
  const double hi = evals_.maxCoeff();
  if (!(lo > 0.0)) throw DomainError("matrix is not positive definite");
  if (hi / lo > 1e12) throw DomainError("matrix condition number exceeds 1e12");
}

Mat SpdMatrix::inverse() const {
  return spectral([](double l) { return 1.0 / l; });
}

SpdMatrix spd_power(const SpdMatrix& x, double p) {
  return SpdMatrix(x.spectral([p](double l) { return std::pow(l, p); }));
}

SpdMatrix spd_sqrt(const SpdMatrix& x) {
  return SpdMatrix(x.spectral([](double l) { return std::sqrt(l); }));
}

Mat spd_log(const SpdMatrix& x) {
  return x.spectral([](double l) { return std::log(l); });
}

Mat sym_exp(const Mat& s) {
  auto es = eig(sym(s));
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

Mat sym_log(const Mat& s) {
  auto es = eig(sym(s));
  if (!(es.eigenvalues().minCoeff() > 0.0)) throw DomainError("sym_log: matrix is not positive definite");
  return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

SpdMatrix geometric_mean(const SpdMatrix& x, const SpdMatrix& y) {
  if (x.dim() != y.dim()) throw DomainError("geometric_mean: dimension mismatch");
  const Mat xh = x.spectral([](double l) { return std::sqrt(l); });
  const Mat xih = x.spectral([](double l) { return 1.0 / std::sqrt(l); });
  auto es = eig(sym(xih * y.matrix() * xih));
  const Mat mid = es.eigenvectors() * es.eigenvalues().array().max(0.0).sqrt().matrix().asDiagonal() *
                  es.eigenvectors().transpose();
  return SpdMatrix(sym(xh * mid * xh));
}

double trace_metric_distance(const Mat& p1, const Mat& p2) {
  if (p1.rows() != p2.rows()) throw DomainError("trace_metric_distance: dimension mismatch");
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(sym(p2), sym(p1));
  if (es.info() != Eigen::Success) throw NumericalError("generalized eigensolver failed");
  const Vec l = es.eigenvalues();
  if (!(l.minCoeff() > 0.0)) throw DomainError("trace_metric_distance: non-positive generalized eigenvalue");
  return std::sqrt(l.array().log().square().sum());
}

double trace_metric_distance(const SpdMatrix& p1, const SpdMatrix& p2) {
  const Mat ih = p1.spectral([](double l) { return 1.0 / std::sqrt(l); });
  auto es = eig(sym(ih * p2.matrix() * ih));
  return std::sqrt(es.eigenvalues().array().log().square().sum());
}

double logdet_div(const SpdMatrix& x, const SpdMatrix& y) {
  if (x.dim() != y.dim()) throw DomainError("logdet_div: dimension mismatch");
  const Mat xyi = x.matrix() * y.inverse();
  return xyi.trace() - (x.log_det() - y.log_det()) - x.dim();
}

double symmetrized_logdet(const SpdMatrix& x, const SpdMatrix& y) {
  if (x.dim() != y.dim()) throw DomainError("symmetrized_logdet: dimension mismatch");
  return (x.inverse() * y.matrix()).trace() + (y.inverse() * x.matrix()).trace() - 2.0 * x.dim();
}

double riccati_residual(const SpdMatrix& z, const SpdMatrix& x, const SpdMatrix& y) {
  return (z.matrix() * x.inverse() * z.matrix() - y.matrix()).norm() / y.matrix().norm();
}

SpdMatrix sld_centroid(const SpdSet& set) {
  check_weights(set.weights, set.size());
  const int d = set.points.front().dim();
  Mat a = Mat::Zero(d, d);
  Mat hinv = Mat::Zero(d, d);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.points[i].dim() != d) throw DomainError("sld_centroid: dimension mismatch");
    a += set.weight(i) * set.points[i].matrix();
    hinv += set.weight(i) * set.points[i].inverse();
  }
  const SpdMatrix h(SpdMatrix(hinv).inverse());
  return geometric_mean(SpdMatrix(a), h);
}

NakamuraResult nakamura_ah(const SpdMatrix& p0, const SpdMatrix& q0, const NakamuraOptions& opts) {
  if (p0.dim() != q0.dim()) throw DomainError("nakamura_ah: dimension mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  Mat p = p0.matrix();
  Mat q = q0.matrix();
  NakamuraResult out;
  double gap = (p - q).norm();
  out.gaps.push_back(gap);
  int it = 0;
  while (gap > opts.rel_tol * p.norm() && it < opts.max_iter) {
    const Mat pi = p.llt().solve(Mat::Identity(p.rows(), p.cols()));
    const Mat qi = q.llt().solve(Mat::Identity(q.rows(), q.cols()));
    const Mat pn = 0.5 * (p + q);
    q = sym(2.0 * (pi + qi).llt().solve(Mat::Identity(p.rows(), p.cols())));
    p = pn;
    gap = (p - q).norm();
    out.gaps.push_back(gap);
    ++it;
  }
  out.diagnostics.iterations = it;
  out.diagnostics.final_gap = gap;
  out.diagnostics.residual = gap;
  out.diagnostics.converged = gap <= opts.rel_tol * p.norm();
  out.diagnostics.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  if (!out.diagnostics.converged) throw NumericalError("nakamura_ah: no convergence within max_iter");
  out.limit = SpdMatrix(0.5 * (p + q));
  return out;
}

double g_invariance_residual(const SpdMatrix& a, const SpdMatrix& h) {
  const SpdMatrix lhs = geometric_mean(a, h);
  const SpdMatrix am(0.5 * (a.matrix() + h.matrix()));
  const SpdMatrix hm(2.0 * SpdMatrix(a.inverse() + h.inverse()).inverse());
  return (lhs.matrix() - geometric_mean(am, hm).matrix()).norm();
}

Vec sym_flatten(const Mat& m) {
  const int d = static_cast<int>(m.rows());
  Vec v(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) v[k++] = m(i, j);
  }
  return v;
}

Mat sym_unflatten(const Vec& v, int d) {
  if (v.size() != d * (d + 1) / 2) throw DomainError("sym_unflatten: wrong vector length");
  Mat m(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      m(i, j) = v[k];
      m(j, i) = v[k];
      ++k;
    }
  }
  return m;
}

Vec sym_metric(int d) {
  Vec w(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) w[k++] = (i == j) ? 1.0 : 2.0;
  }
  return w;
}

}  // namespace jcenters

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

#ifndef JCENTERS_SPD_HPP_
#define JCENTERS_SPD_HPP_

#include <Eigen/Dense>

#include "jcenters/legendre.hpp"

namespace jcenters {

using Mat = Eigen::MatrixXd;

// Symmetric positive-definite matrix with its cached spectral decomposition.
// Construction symmetrizes (M + M^T)/2 after rejecting asymmetry above 1e-8
// relative, then requires a positive spectrum with condition number <= 1e12.
class SpdMatrix {
 public:
  SpdMatrix() = default;
  explicit SpdMatrix(const Mat& m);

  static SpdMatrix Identity(int d) { return SpdMatrix(Mat::Identity(d, d)); }

  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Vec& eigenvalues() const { return evals_; }
  const Mat& eigenvectors() const { return evecs_; }

  // V f(L) V^T for any spectral function.
  template <class Fn>
  Mat spectral(Fn fn) const {
    return evecs_ * evals_.unaryExpr(fn).asDiagonal() * evecs_.transpose();
  }

  Mat inverse() const;
  double log_det() const { return evals_.array().log().sum(); }

 private:
  Mat m_;
  Vec evals_;
  Mat evecs_;
};

using SpdSet = WeightedSet<SpdMatrix>;

SpdMatrix spd_power(const SpdMatrix& x, double p);
SpdMatrix spd_sqrt(const SpdMatrix& x);
Mat spd_log(const SpdMatrix& x);
// Exponential of a symmetric matrix.
Mat sym_exp(const Mat& s);
// Logarithm of a symmetric positive-definite matrix without the conditioning guard.
Mat sym_log(const Mat& s);

// X^{1/2} (X^{-1/2} Y X^{-1/2})^{1/2} X^{1/2}.
SpdMatrix geometric_mean(const SpdMatrix& x, const SpdMatrix& y);

// || log(P1^{-1/2} P2 P1^{-1/2}) ||_F.
double trace_metric_distance(const SpdMatrix& p1, const SpdMatrix& p2);
// Same distance on raw symmetric matrices, skipping the conditioning guard.
double trace_metric_distance(const Mat& p1, const Mat& p2);

double logdet_div(const SpdMatrix& x, const SpdMatrix& y);
double symmetrized_logdet(const SpdMatrix& x, const SpdMatrix& y);

// || Z X^{-1} Z - Y ||_F / || Y ||_F.
double riccati_residual(const SpdMatrix& z, const SpdMatrix& x, const SpdMatrix& y);

// A # H with A the weighted arithmetic and H the weighted harmonic mean.
SpdMatrix sld_centroid(const SpdSet& set);

struct NakamuraOptions {
  double rel_tol = 1e-13;  // stop when ||P - Q||_F <= rel_tol * ||P||_F
  int max_iter = 100;
};

struct NakamuraResult {
  SpdMatrix limit;
  CenterDiagnostics diagnostics;
  std::vector<double> gaps;
};

// P <- (P + Q)/2, Q <- 2 (P^{-1} + Q^{-1})^{-1}.
NakamuraResult nakamura_ah(const SpdMatrix& p, const SpdMatrix& q, const NakamuraOptions& opts = {});

// || G(A, H) - G((A + H)/2, 2 (A^{-1} + H^{-1})^{-1}) ||_F with G = #.
double g_invariance_residual(const SpdMatrix& a, const SpdMatrix& h);

// Symmetric-matrix flattening: upper triangle row-major, with the matching
// inner-product weights (1 on the diagonal, 2 off it).
Vec sym_flatten(const Mat& m);
Mat sym_unflatten(const Vec& v, int d);
Vec sym_metric(int d);

}  // namespace jcenters

#endif  // JCENTERS_SPD_HPP_

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

#ifndef JCENTERS_GAUSSIAN_HPP_
#define JCENTERS_GAUSSIAN_HPP_

#include <utility>

#include "jcenters/gauss_bregman.hpp"
#include "jcenters/spd.hpp"

namespace jcenters {

struct GaussianParam {
  Vec mean;
  SpdMatrix cov;

  GaussianParam() = default;
  GaussianParam(Vec mu, SpdMatrix sigma);
  int dim() const { return static_cast<int>(mean.size()); }
};

using GaussianSet = WeightedSet<GaussianParam>;

// theta_v = Sigma^{-1} mu, theta_M = -Sigma^{-1} / 2.
struct MvnNatural {
  Vec theta_v;
  Mat theta_M;
};

// eta_v = mu, eta_M = Sigma + mu mu^T.
struct MvnMoment {
  Vec eta_v;
  Mat eta_M;
};

MvnNatural mvn_to_natural(const GaussianParam& p);
GaussianParam mvn_from_natural(const MvnNatural& t);
MvnMoment mvn_to_moment(const GaussianParam& p);
GaussianParam mvn_from_moment(const MvnMoment& e);

int mvn_flat_dim(int d);
// theta_v first, then the upper triangle of theta_M row-major.
Vec flatten(const MvnNatural& t);
Vec flatten(const MvnMoment& e);
MvnNatural unflatten_natural(const Vec& v, int d);
MvnMoment unflatten_moment(const Vec& v, int d);

// Log-normalizer over the flattened natural parameter; the gradient is the
// flattened moment parameter.
GeneratorSpec mvn_generator(int d);

double kl_mvn(const GaussianParam& p, const GaussianParam& q);
// KL(p:q) + KL(q:p).
double jeffreys_mvn(const GaussianParam& p, const GaussianParam& q);
double jeffreys_loss_mvn(const GaussianSet& set, const GaussianParam& q);

// The set in flattened natural coordinates.
WeightedParamSet natural_set(const GaussianSet& set);

struct SidedCentroids {
  MvnNatural right;  // arithmetic mean of natural parameters
  MvnNatural left;   // moment mean mapped back to natural parameters
};
SidedCentroids sided_kl_centroids_mvn(const GaussianSet& set);

// Fisher-Rao geodesic midpoint computed through the (2d+1)-dimensional SPD
// embedding. g0 is the embedding of p0, g1 a lift of p1 joined to g0 by a
// horizontal geodesic, and g = g0 # g1 is the midpoint whose projection is
// the returned distribution.
struct FisherRaoMidpoint {
  GaussianParam midpoint;
  Mat g0;
  Mat g1;
  Mat g;
  double distance = 0.0;          // Fisher-Rao distance between p0 and p1
  double shooting_residual = 0.0; // max-abs mismatch of the projected endpoint
  int evaluations = 0;
};

// Embedding N(mu, Sigma) -> M diag(Sigma^{-1}, 1, Sigma) M^T with
// M = [[I,0,0],[mu^T,1,0],[-mu mu^T/2,-mu,I]].
Mat embed_mvn(const GaussianParam& p);
// Inverse of the embedding on its image: Sigma = (G_11)^{-1}, mu = Sigma G_12.
GaussianParam project_embedded(const Mat& g, int d);

FisherRaoMidpoint fisher_rao_midpoint_mvn(const GaussianParam& p0, const GaussianParam& p1);

GaussianParam jfr_center_mvn(const GaussianSet& set);

struct GaussianCenter {
  GaussianParam center;
  CenterDiagnostics diagnostics;
};
GaussianCenter gb_center_mvn(const GaussianSet& set, const GBOptions& opts = {});

// Closed-form Jeffreys centroid for a common mean: covariance A # H.
GaussianParam jeffreys_centroid_centered(const SpdSet& covs, const Vec& mean);

// Gradient-norm of the Jeffreys loss at q, in flattened natural coordinates.
double jeffreys_residual_mvn(const GaussianSet& set, const GaussianParam& q);

// (mu, Sigma) -> (A mu + b, A Sigma A^T).
GaussianParam affine_map(const GaussianParam& p, const Mat& a, const Vec& b);

}  // namespace jcenters

#endif  // JCENTERS_GAUSSIAN_HPP_

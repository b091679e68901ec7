// Copyright 2026 The bgmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "bgmm/linalg.hpp"

namespace bgmm {

/// Partition of joint dimensions into an input block and an output block.
/// The index lists are disjoint and together cover 0..dim-1.
struct BlockSplit {
  std::vector<int> in_idx;
  std::vector<int> out_idx;

  int dim() const { return static_cast<int>(in_idx.size() + out_idx.size()); }
  int in_dim() const { return static_cast<int>(in_idx.size()); }
  int out_dim() const { return static_cast<int>(out_idx.size()); }

  /// The first d_in dimensions are inputs, the remaining d_out outputs.
  static BlockSplit contiguous(int d_in, int d_out);
  void validate(int dim) const;
};

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx);
Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols);

/// Multivariate normal with dense SPD covariance. Immutable; the Cholesky
/// factor is computed once at construction.
class MvnDist {
 public:
  MvnDist(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  const SpdFactor& factor() const { return factor_; }
  Eigen::MatrixXd precision() const { return factor_.inverse(); }

  double logpdf(const Eigen::VectorXd& x) const;
  /// Differential entropy 0.5 log det(2 pi e cov), nats.
  double entropy() const;
  Eigen::VectorXd sample_one(std::mt19937_64& rng) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  SpdFactor factor_;
};

/// Multivariate t-distribution with location, SPD scale matrix and degrees of
/// freedom. Gaussian in the dof -> infinity limit.
class MvtDist {
 public:
  MvtDist(Eigen::VectorXd loc, Eigen::MatrixXd scale, double dof);

  int dim() const { return static_cast<int>(loc_.size()); }
  const Eigen::VectorXd& loc() const { return loc_; }
  const Eigen::MatrixXd& scale() const { return scale_; }
  double dof() const { return dof_; }
  const SpdFactor& factor() const { return factor_; }

  double logpdf(const Eigen::VectorXd& x) const;
  /// Covariance scale * dof/(dof-2). Throws MomentError for dof <= 2 + 1e-6.
  Eigen::MatrixXd variance_matrix() const;

  /// n deterministic draws, one per row, from the given seed.
  Eigen::MatrixXd sample(int n, std::uint64_t seed) const;
  Eigen::VectorXd sample_one(std::mt19937_64& rng) const;

 private:
  Eigen::VectorXd loc_;
  Eigen::MatrixXd scale_;
  double dof_;
  SpdFactor factor_;
};

/// Conditional of a joint t-distribution given the input block fixed at x.
/// dof grows by the input dimension and the Schur-complement scale picks up
/// the factor (dof + mahalanobis(x)) / (dof + d_in), so uncertainty grows
/// away from the input location.
MvtDist t_condition(const MvtDist& joint, const BlockSplit& split,
                    const Eigen::VectorXd& x);

/// Marginal over the selected dimensions: same dof, sub-blocks of loc/scale.
MvtDist t_marginal(const MvtDist& joint, const std::vector<int>& idx);

struct MvnProduct {
  MvnDist dist;
  /// log integral of the pointwise density product; the weight update of
  /// mixture products needs it.
  double log_normalizer;
};

/// Pointwise density product of two Gaussians: precision-weighted mean and
/// summed precisions, plus the product's log normalizer.
MvnProduct mvn_product(const MvnDist& a, const MvnDist& b);

/// Conjugate normal-Wishart hyperparameters (mu0, kappa, nu, T).
struct NormalWishartParams {
  Eigen::VectorXd mu0;
  double kappa;
  double nu;
  Eigen::MatrixXd T;

  NormalWishartParams(Eigen::VectorXd mu0, double kappa, double nu,
                      Eigen::MatrixXd T);
  int dim() const { return static_cast<int>(mu0.size()); }
};

}  // namespace bgmm

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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bgmm/distributions.hpp"

namespace bgmm {

/// Joint observations z = [x; u], one per row, with the input/output split.
struct Dataset {
  Eigen::MatrixXd Z;
  BlockSplit split;

  Dataset(Eigen::MatrixXd Z, BlockSplit split);

  int n() const { return static_cast<int>(Z.rows()); }
  int dim() const { return static_cast<int>(Z.cols()); }
};

/// Prior over mixing weights: a Dirichlet distribution with a fixed number of
/// components, or a stick-breaking Dirichlet process truncated at a finite
/// number of sticks.
struct WeightPrior {
  enum class Kind { dirichlet, dirichlet_process };

  Kind kind;
  double alpha;
  int components;  // K, or the DP truncation level

  static WeightPrior dirichlet(double alpha, int k);
  static WeightPrior dirichlet_process(double alpha, int truncation);
};

struct FitConfig {
  int max_iter = 200;
  double elbo_tol = 1e-6;
  int n_init = 3;
  std::uint64_t seed = 0;
  double weight_floor = 1e-3;  // DP component pruning threshold
};

/// Weighted mixture of t-distributions, the posterior predictive form.
struct MvtMixture {
  Eigen::VectorXd weights;
  std::vector<MvtDist> components;

  MvtMixture(Eigen::VectorXd weights, std::vector<MvtDist> components);

  int dim() const { return components.front().dim(); }
  int size() const { return static_cast<int>(components.size()); }
  double logpdf(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample_one(std::mt19937_64& rng) const;
};

/// Fitted Bayesian mixture: per-component normal-Wishart posteriors, expected
/// mixing weights, and the fit diagnostics. Immutable.
class BgmmPosterior {
 public:
  BgmmPosterior(std::vector<NormalWishartParams> components,
                Eigen::VectorXd weights, double prior_mass,
                NormalWishartParams prior, WeightPrior weight_prior,
                BlockSplit split, std::vector<double> elbo_trace);

  int n_components() const { return static_cast<int>(components_.size()); }
  int dim() const { return prior_.dim(); }
  const std::vector<NormalWishartParams>& components() const {
    return components_;
  }
  const Eigen::VectorXd& weights() const { return weights_; }
  /// Expected leftover stick mass carried by the prior predictive component
  /// at prediction time (0 for a Dirichlet-distribution weight prior).
  double prior_mass() const { return prior_mass_; }
  const NormalWishartParams& prior() const { return prior_; }
  const WeightPrior& weight_prior() const { return weight_prior_; }
  const BlockSplit& split() const { return split_; }
  const std::vector<double>& elbo_trace() const { return elbo_trace_; }
  double final_elbo() const { return elbo_trace_.back(); }

 private:
  std::vector<NormalWishartParams> components_;
  Eigen::VectorXd weights_;
  double prior_mass_;
  NormalWishartParams prior_;
  WeightPrior weight_prior_;
  BlockSplit split_;
  std::vector<double> elbo_trace_;
};

/// Conjugate posterior update. With resp given, the count/mean/scatter are
/// the responsibility-weighted statistics; with n = 0 (or zero total
/// responsibility) the prior is returned unchanged.
NormalWishartParams nw_posterior_update(
    const NormalWishartParams& prior, const Dataset& data,
    const std::optional<Eigen::VectorXd>& resp = std::nullopt);

/// Posterior predictive of a normal-Wishart: t with dof nu - d + 1, location
/// mu, scale T (kappa+1) / (kappa (nu - d + 1)).
MvtDist nw_posterior_predictive(const NormalWishartParams& p);

/// Unit-free default prior: mu0 = data mean, kappa = 1, nu = d + 2,
/// T = nu * diag(data variances) * t_scale.
NormalWishartParams default_prior(const Dataset& data, double t_scale = 1.0);

/// Mean-field variational fit of the Bayesian Gaussian mixture. Coordinate
/// ascent with k-means++-style seeding, n_init restarts, best final ELBO
/// kept. The ELBO trace is non-decreasing within each run.
BgmmPosterior vb_fit(const Dataset& data, const NormalWishartParams& prior,
                     const WeightPrior& wp, const FitConfig& cfg);

/// Posterior predictive mixture of t-distributions. When the flag is set and
/// leftover stick mass is present (DP semantics), the prior predictive is
/// appended with that mass and the weights renormalized.
MvtMixture posterior_predictive_mixture(const BgmmPosterior& post,
                                        bool include_prior_component);

}  // namespace bgmm

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

#include <optional>
#include <random>
#include <vector>

#include "bgmm/distributions.hpp"

namespace bgmm {

/// Weighted mixture of Gaussians. Weights live on the simplex.
struct MixtureOfMvn {
  Eigen::VectorXd weights;
  std::vector<MvnDist> components;

  MixtureOfMvn(Eigen::VectorXd weights, std::vector<MvnDist> components);

  int dim() const { return components.front().dim(); }
  int size() const { return static_cast<int>(components.size()); }
  double logpdf(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample_one(std::mt19937_64& rng) const;
};

/// Mean and covariance of the mixture (law of total mean/variance).
MvnDist moment_match(const MixtureOfMvn& mix);

/// Product of experts for Gaussians: summed precisions, precision-weighted
/// mean average.
MvnDist fuse_mvn(const std::vector<MvnDist>& policies);

/// Product of a Gaussian mixture with a single Gaussian expert. Component
/// weights pick up the pairwise product normalizers and are renormalized.
MixtureOfMvn fuse_mixture_mvn(const MixtureOfMvn& mix, const MvnDist& expert);

/// Product of two Gaussian mixtures: all pairwise component products.
/// Optional top_m keeps only the heaviest components to bound growth under
/// repeated products.
MixtureOfMvn fuse_mixture_mixture(const MixtureOfMvn& a, const MixtureOfMvn& b,
                                  std::optional<int> top_m = std::nullopt);

/// A state-indexed distribution over control commands. eval() returns the
/// (moment-matched) Gaussian at a state and time step; policies that carry a
/// richer conditional can expose it through eval_mixture()/sample().
class GaussianPolicy {
 public:
  virtual ~GaussianPolicy() = default;

  virtual MvnDist eval(const Eigen::VectorXd& x, int t) const = 0;

  /// Draw a command; defaults to sampling eval(). Multimodal policies
  /// override this to sample their full conditional.
  virtual Eigen::VectorXd sample(const Eigen::VectorXd& x, int t,
                                 std::mt19937_64& rng) const {
    return eval(x, t).sample_one(rng);
  }

  /// Uncertainty scalar at (x, t) when the policy tracks one.
  virtual std::optional<double> entropy(const Eigen::VectorXd& x, int t) const {
    (void)x;
    (void)t;
    return std::nullopt;
  }

  /// Mixture form of the conditional when the policy has one.
  virtual std::optional<MixtureOfMvn> eval_mixture(const Eigen::VectorXd& x,
                                                   int t) const {
    (void)x;
    (void)t;
    return std::nullopt;
  }
};

}  // namespace bgmm

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

#include "bgmm/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bgmm {

namespace {
Eigen::VectorXd normalized_weights(Eigen::VectorXd w, std::size_t n_components) {
  if (static_cast<std::size_t>(w.size()) != n_components) {
    throw ArgumentError("MixtureOfMvn: weight/component count mismatch");
  }
  if (w.size() == 0) {
    throw ArgumentError("MixtureOfMvn: empty mixture");
  }
  if ((w.array() < 0.0).any()) {
    throw ArgumentError("MixtureOfMvn: negative weight");
  }
  const double total = w.sum();
  if (!(total > 0.0) || std::abs(total - 1.0) > 1e-9) {
    throw ArgumentError("MixtureOfMvn: weights not on the simplex");
  }
  return w / total;
}

/// Normalize log weights in place; returns linear-space simplex weights.
Eigen::VectorXd softmax(const Eigen::VectorXd& log_w) {
  const double lse = log_sum_exp(log_w);
  return (log_w.array() - lse).exp();
}
}  // namespace

MixtureOfMvn::MixtureOfMvn(Eigen::VectorXd w, std::vector<MvnDist> comps)
    : weights(normalized_weights(std::move(w), comps.size())),
      components(std::move(comps)) {
  const int d = components.front().dim();
  for (const auto& c : components) {
    if (c.dim() != d) {
      throw ArgumentError("MixtureOfMvn: components disagree on dimension");
    }
  }
}

double MixtureOfMvn::logpdf(const Eigen::VectorXd& x) const {
  Eigen::VectorXd terms(size());
  for (int k = 0; k < size(); ++k) {
    terms[k] = weights[k] > 0.0
                   ? std::log(weights[k]) + components[k].logpdf(x)
                   : -std::numeric_limits<double>::infinity();
  }
  return log_sum_exp(terms);
}

Eigen::VectorXd MixtureOfMvn::sample_one(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  int pick = size() - 1;
  double acc = 0.0;
  for (int k = 0; k < size(); ++k) {
    acc += weights[k];
    if (u <= acc) {
      pick = k;
      break;
    }
  }
  return components[pick].sample_one(rng);
}

MvnDist moment_match(const MixtureOfMvn& mix) {
  const int d = mix.dim();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < mix.size(); ++k) {
    mean += mix.weights[k] * mix.components[k].mean();
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < mix.size(); ++k) {
    const Eigen::VectorXd dm = mix.components[k].mean() - mean;
    cov += mix.weights[k] * (mix.components[k].cov() + dm * dm.transpose());
  }
  return MvnDist(mean, symmetrize(cov));
}

MvnDist fuse_mvn(const std::vector<MvnDist>& policies) {
  if (policies.empty()) {
    throw ArgumentError("fuse_mvn: needs at least one policy");
  }
  const int d = policies.front().dim();
  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd info = Eigen::VectorXd::Zero(d);
  for (const auto& p : policies) {
    if (p.dim() != d) {
      throw ArgumentError("fuse_mvn: dimension mismatch");
    }
    const Eigen::MatrixXd prec = p.precision();
    precision += prec;
    info += prec * p.mean();
  }
  const SpdFactor f(symmetrize(precision));
  return MvnDist(f.solve(info), symmetrize(f.inverse()));
}

MixtureOfMvn fuse_mixture_mvn(const MixtureOfMvn& mix, const MvnDist& expert) {
  if (mix.dim() != expert.dim()) {
    throw ArgumentError("fuse_mixture_mvn: dimension mismatch");
  }
  std::vector<MvnDist> fused;
  fused.reserve(mix.components.size());
  Eigen::VectorXd log_w(mix.size());
  for (int k = 0; k < mix.size(); ++k) {
    MvnProduct prod = mvn_product(mix.components[k], expert);
    log_w[k] = (mix.weights[k] > 0.0 ? std::log(mix.weights[k])
                                     : -std::numeric_limits<double>::infinity()) +
               prod.log_normalizer;
    fused.push_back(std::move(prod.dist));
  }
  return MixtureOfMvn(softmax(log_w), std::move(fused));
}

MixtureOfMvn fuse_mixture_mixture(const MixtureOfMvn& a, const MixtureOfMvn& b,
                                  std::optional<int> top_m) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("fuse_mixture_mixture: dimension mismatch");
  }
  std::vector<MvnDist> fused;
  fused.reserve(static_cast<std::size_t>(a.size()) * b.size());
  Eigen::VectorXd log_w(a.size() * b.size());
  int idx = 0;
  for (int i = 0; i < a.size(); ++i) {
    const double lwa = a.weights[i] > 0.0
                           ? std::log(a.weights[i])
                           : -std::numeric_limits<double>::infinity();
    for (int j = 0; j < b.size(); ++j) {
      MvnProduct prod = mvn_product(a.components[i], b.components[j]);
      const double lwb = b.weights[j] > 0.0
                             ? std::log(b.weights[j])
                             : -std::numeric_limits<double>::infinity();
      log_w[idx++] = lwa + lwb + prod.log_normalizer;
      fused.push_back(std::move(prod.dist));
    }
  }

  if (top_m && *top_m >= 1 && *top_m < static_cast<int>(fused.size())) {
    std::vector<int> order(fused.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return log_w[l] > log_w[r]; });
    order.resize(static_cast<std::size_t>(*top_m));
    std::sort(order.begin(), order.end());  // keep original component order
    std::vector<MvnDist> kept;
    kept.reserve(order.size());
    Eigen::VectorXd kept_log_w(static_cast<int>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i) {
      kept.push_back(std::move(fused[static_cast<std::size_t>(order[i])]));
      kept_log_w[static_cast<int>(i)] = log_w[order[i]];
    }
    return MixtureOfMvn(softmax(kept_log_w), std::move(kept));
  }
  return MixtureOfMvn(softmax(log_w), std::move(fused));
}

}  // namespace bgmm

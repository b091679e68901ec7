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

#include "bgmm/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace bgmm {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
constexpr double kMomentDofFloor = 2.0 + 1e-6;

Eigen::MatrixXd checked_spd_input(Eigen::MatrixXd m, const char* what) {
  require_finite(m, what);
  if (!is_symmetric(m, 1e-9)) {
    throw ArgumentError(std::string(what) + ": not symmetric");
  }
  return symmetrize(m);
}

void check_index_set(const std::vector<int>& idx, int dim, const char* what) {
  if (idx.empty()) {
    throw ArgumentError(std::string(what) + ": empty index set");
  }
  std::set<int> seen;
  for (int i : idx) {
    if (i < 0 || i >= dim) {
      throw ArgumentError(std::string(what) + ": index out of range");
    }
    if (!seen.insert(i).second) {
      throw ArgumentError(std::string(what) + ": duplicate index");
    }
  }
}
}  // namespace

BlockSplit BlockSplit::contiguous(int d_in, int d_out) {
  if (d_in < 1 || d_out < 0) {
    throw ArgumentError("BlockSplit: block sizes must be positive");
  }
  BlockSplit s;
  s.in_idx.resize(d_in);
  s.out_idx.resize(d_out);
  for (int i = 0; i < d_in; ++i) s.in_idx[i] = i;
  for (int i = 0; i < d_out; ++i) s.out_idx[i] = d_in + i;
  return s;
}

void BlockSplit::validate(int d) const {
  if (static_cast<int>(in_idx.size() + out_idx.size()) != d) {
    throw ArgumentError("BlockSplit: index lists do not cover the dimension");
  }
  std::set<int> seen;
  for (int i : in_idx) {
    if (i < 0 || i >= d || !seen.insert(i).second) {
      throw ArgumentError("BlockSplit: invalid or duplicate input index");
    }
  }
  for (int i : out_idx) {
    if (i < 0 || i >= d || !seen.insert(i).second) {
      throw ArgumentError("BlockSplit: invalid or duplicate output index");
    }
  }
  if (in_idx.empty()) {
    throw ArgumentError("BlockSplit: input block is empty");
  }
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<int>(i)] = v[idx[i]];
  return out;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<int>(r), static_cast<int>(c)) = m(rows[r], cols[c]);
    }
  }
  return out;
}

MvnDist::MvnDist(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)),
      cov_(checked_spd_input(std::move(cov), "MvnDist covariance")),
      factor_(cov_) {
  require_finite(mean_, "MvnDist mean");
  if (mean_.size() != cov_.rows()) {
    throw ArgumentError("MvnDist: mean/covariance dimension mismatch");
  }
}

double MvnDist::logpdf(const Eigen::VectorXd& x) const {
  if (x.size() != mean_.size()) {
    throw ArgumentError("MvnDist::logpdf: dimension mismatch");
  }
  const double m = factor_.mahalanobis_sq(x - mean_);
  return -0.5 * (dim() * kLog2Pi + factor_.log_det() + m);
}

double MvnDist::entropy() const {
  return 0.5 * (dim() * (1.0 + kLog2Pi) + factor_.log_det());
}

Eigen::VectorXd MvnDist::sample_one(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = normal(rng);
  return mean_ + factor_.matrix_l() * z;
}

MvtDist::MvtDist(Eigen::VectorXd loc, Eigen::MatrixXd scale, double dof)
    : loc_(std::move(loc)),
      scale_(checked_spd_input(std::move(scale), "MvtDist scale")),
      dof_(dof),
      factor_(scale_) {
  require_finite(loc_, "MvtDist location");
  if (loc_.size() != scale_.rows()) {
    throw ArgumentError("MvtDist: location/scale dimension mismatch");
  }
  if (!(dof_ > 0.0) || !std::isfinite(dof_)) {
    throw ArgumentError("MvtDist: dof must be positive and finite");
  }
}

double MvtDist::logpdf(const Eigen::VectorXd& x) const {
  if (x.size() != loc_.size()) {
    throw ArgumentError("MvtDist::logpdf: dimension mismatch");
  }
  const double d = static_cast<double>(dim());
  const double m = factor_.mahalanobis_sq(x - loc_);
  return std::lgamma(0.5 * (dof_ + d)) - std::lgamma(0.5 * dof_) -
         0.5 * d * std::log(dof_ * std::numbers::pi) -
         0.5 * factor_.log_det() - 0.5 * (dof_ + d) * std::log1p(m / dof_);
}

Eigen::MatrixXd MvtDist::variance_matrix() const {
  if (dof_ <= kMomentDofFloor) {
    throw MomentError("MvtDist: variance undefined for dof <= 2");
  }
  return scale_ * (dof_ / (dof_ - 2.0));
}

Eigen::MatrixXd MvtDist::sample(int n, std::uint64_t seed) const {
  if (n < 1) {
    throw ArgumentError("MvtDist::sample: n must be >= 1");
  }
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd out(n, dim());
  for (int i = 0; i < n; ++i) {
    out.row(i) = sample_one(rng).transpose();
  }
  return out;
}

Eigen::VectorXd MvtDist::sample_one(std::mt19937_64& rng) const {
  // x = loc + L z * sqrt(dof / w), w ~ chi2(dof).
  std::gamma_distribution<double> chi2(0.5 * dof_, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double w = chi2(rng);
  Eigen::VectorXd z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = normal(rng);
  return loc_ + factor_.matrix_l() * z * std::sqrt(dof_ / w);
}

MvtDist t_condition(const MvtDist& joint, const BlockSplit& split,
                    const Eigen::VectorXd& x) {
  split.validate(joint.dim());
  if (split.out_idx.empty()) {
    throw ArgumentError("t_condition: output block is empty");
  }
  if (x.size() != split.in_dim()) {
    throw ArgumentError("t_condition: query dimension mismatch");
  }
  const auto& loc = joint.loc();
  const auto& S = joint.scale();
  const Eigen::VectorXd mu_in = gather(loc, split.in_idx);
  const Eigen::VectorXd mu_out = gather(loc, split.out_idx);
  const Eigen::MatrixXd S_ii = gather(S, split.in_idx, split.in_idx);
  const Eigen::MatrixXd S_oi = gather(S, split.out_idx, split.in_idx);
  const Eigen::MatrixXd S_oo = gather(S, split.out_idx, split.out_idx);

  try {
    const SpdFactor f_ii(S_ii);
    const Eigen::VectorXd diff = x - mu_in;
    const Eigen::VectorXd sol = f_ii.solve(diff);
    const double mahal = diff.dot(sol);
    const double nu = joint.dof();
    const double d_in = static_cast<double>(split.in_dim());

    const Eigen::VectorXd loc_c = mu_out + S_oi * sol;
    const Eigen::MatrixXd schur =
        symmetrize(S_oo - S_oi * f_ii.solve(S_oi.transpose()));
    const double factor = (nu + mahal) / (nu + d_in);
    return MvtDist(loc_c, factor * schur, nu + d_in);
  } catch (const SingularMatrixError& e) {
    throw ConditioningError(std::string("t_condition: input block singular (") +
                            e.what() + ")");
  }
}

MvtDist t_marginal(const MvtDist& joint, const std::vector<int>& idx) {
  check_index_set(idx, joint.dim(), "t_marginal");
  return MvtDist(gather(joint.loc(), idx), gather(joint.scale(), idx, idx),
                 joint.dof());
}

MvnProduct mvn_product(const MvnDist& a, const MvnDist& b) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("mvn_product: dimension mismatch");
  }
  const Eigen::MatrixXd prec_a = a.precision();
  const Eigen::MatrixXd prec_b = b.precision();
  const SpdFactor fused(symmetrize(prec_a + prec_b));
  const Eigen::VectorXd mean =
      fused.solve(prec_a * a.mean() + prec_b * b.mean());
  const Eigen::MatrixXd cov = symmetrize(fused.inverse());

  // integral of N(x|a)N(x|b) dx = N(mu_a | mu_b, cov_a + cov_b)
  const MvnDist convolution(b.mean(), symmetrize(a.cov() + b.cov()));
  return MvnProduct{MvnDist(mean, cov), convolution.logpdf(a.mean())};
}

NormalWishartParams::NormalWishartParams(Eigen::VectorXd mu0_in, double kappa_in,
                                         double nu_in, Eigen::MatrixXd T_in)
    : mu0(std::move(mu0_in)),
      kappa(kappa_in),
      nu(nu_in),
      T(checked_spd_input(std::move(T_in), "NormalWishartParams T")) {
  require_finite(mu0, "NormalWishartParams mu0");
  const int d = dim();
  if (T.rows() != d || T.cols() != d) {
    throw ArgumentError("NormalWishartParams: mu0/T dimension mismatch");
  }
  if (!(kappa > 0.0)) {
    throw InvalidPriorError("NormalWishartParams: kappa must be > 0");
  }
  if (!(nu > d - 1.0)) {
    throw InvalidPriorError("NormalWishartParams: nu must exceed dim - 1");
  }
  SpdFactor check(T);  // SPD or throws
  (void)check;
}

}  // namespace bgmm

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
#include <functional>

#include "bgmm/errors.hpp"

namespace bgmm {

/// Cholesky factorization of a symmetric positive definite matrix.
///
/// If the plain factorization fails, the diagonal is jittered by
/// eps * trace(M)/d for eps = 1e-10, 1e-9, ..., 1e-6 before the matrix is
/// declared singular. The applied jitter is observable through jitter().
class SpdFactor {
 public:
  explicit SpdFactor(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(llt_.matrixLLT().rows()); }
  /// log determinant of the (possibly jittered) matrix.
  double log_det() const { return log_det_; }
  double jitter() const { return jitter_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  Eigen::MatrixXd inverse() const;
  Eigen::MatrixXd matrix_l() const { return llt_.matrixL(); }
  /// diff' M^-1 diff.
  double mahalanobis_sq(const Eigen::VectorXd& diff) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_det_ = 0.0;
  double jitter_ = 0.0;
};

bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-9);
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m);

/// Eigenvalue clamp at zero. Sets *projected when clamping occurred.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, bool* projected = nullptr);

void require_finite(const Eigen::MatrixXd& m, const char* what);

/// log(sum(exp(v))) with max subtraction; -inf for an all -inf input.
double log_sum_exp(const Eigen::VectorXd& v);

/// Largest thread count allowed for internal parallelism. Reads BGMM_THREADS,
/// defaults to hardware concurrency.
int max_threads();

/// Chunked parallel map over [0, n). Results must not depend on the chunking;
/// callers keep determinism by writing to disjoint preallocated slots.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace bgmm

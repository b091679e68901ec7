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

#include "bgmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bgmm {

SpdFactor::SpdFactor(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw ArgumentError("SpdFactor: matrix is not square");
  }
  require_finite(m, "SpdFactor input");
  const int d = static_cast<int>(m.rows());
  const double base = m.trace() / std::max(1, d);

  auto try_factor = [&](double eps) -> bool {
    Eigen::MatrixXd jittered = m;
    if (eps > 0.0) {
      jittered.diagonal().array() += eps;
    }
    llt_.compute(jittered);
    if (llt_.info() != Eigen::Success) return false;
    // LLT can "succeed" on semi-definite input; insist on positive pivots.
    const auto diag = llt_.matrixLLT().diagonal();
    if ((diag.array() <= 0.0).any() || !diag.allFinite()) return false;
    log_det_ = 2.0 * diag.array().log().sum();
    jitter_ = eps;
    return true;
  };

  if (try_factor(0.0)) return;
  const double scale = (base > 0.0 && std::isfinite(base)) ? base : 1.0;
  for (double eps = 1e-10; eps <= 1.0000001e-6; eps *= 10.0) {
    if (try_factor(eps * scale)) return;
  }
  throw SingularMatrixError(
      "SpdFactor: matrix numerically singular after jitter ladder");
}

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::MatrixXd SpdFactor::solve(const Eigen::MatrixXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::MatrixXd SpdFactor::inverse() const {
  const int d = dim();
  return llt_.solve(Eigen::MatrixXd::Identity(d, d));
}

double SpdFactor::mahalanobis_sq(const Eigen::VectorXd& diff) const {
  return diff.dot(llt_.solve(diff));
}

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, bool* projected) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m));
  Eigen::VectorXd evals = es.eigenvalues();
  bool clamped = false;
  for (int i = 0; i < evals.size(); ++i) {
    if (evals[i] < 0.0) {
      evals[i] = 0.0;
      clamped = true;
    }
  }
  if (projected != nullptr) *projected = clamped;
  if (!clamped) return symmetrize(m);
  return es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().transpose();
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw ArgumentError(std::string(what) + ": non-finite entries");
  }
}

double log_sum_exp(const Eigen::VectorXd& v) {
  if (v.size() == 0) return -std::numeric_limits<double>::infinity();
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

int max_threads() {
  if (const char* env = std::getenv("BGMM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
  const int workers = std::min(max_threads(), std::max(1, n));
  if (workers <= 1 || n < 2) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bgmm

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

#include <stdexcept>
#include <string>
#include <vector>

namespace bgmm {

/// Base class of all exceptions thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions, invalid index sets, or malformed arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An SPD factorization failed even after the jitter ladder.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Conditioning failed; carries the offending mixture component when known.
class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what, int component = -1)
      : Error(what), component(component) {}
  int component;
};

/// A second moment was requested from a t-distribution with dof <= 2.
class MomentError : public Error {
 public:
  explicit MomentError(const std::string& what, std::vector<int> components = {})
      : Error(what), components(std::move(components)) {}
  std::vector<int> components;
};

/// Hyperparameters do not define a proper prior or predictive distribution.
class InvalidPriorError : public Error {
 public:
  using Error::Error;
};

/// The Riccati recursion hit a non-PD control curvature; carries the step.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what, int step = -1)
      : Error(what), step(step) {}
  int step;
};

/// The variational fit could not proceed.
class FitError : public Error {
 public:
  using Error::Error;
};

/// An input file or config failed validation; carries a line number when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, long line = -1)
      : Error(what), line(line) {}
  long line;
};

}  // namespace bgmm

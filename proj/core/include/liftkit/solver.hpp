// Copyright 2026 The liftkit Authors
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

#pragma once

#include <cstdint>
#include <vector>

#include "liftkit/linalg.hpp"
#include "liftkit/measurement.hpp"

namespace liftkit {

/// { x in R^n : M x = b } with a rank-revealing factorization of M computed
/// once. Rank is decided with cutoff 1e-12 * sigma_max, so duplicate rows are
/// harmless; inconsistent right-hand sides resolve to the least-squares point.
class AffineSet {
 public:
  AffineSet(const Eigen::MatrixXd& rows, const RealVec& rhs);

  /// Euclidean projection onto the affine set.
  RealVec project(const RealVec& v) const;

  /// Distance from v to the row space of M, relative to ||v|| (0 for v = 0).
  double row_space_residual(const RealVec& v) const;

  int rank() const { return static_cast<int>(basis_.cols()); }
  const RealVec& particular() const { return particular_; }

 private:
  Eigen::MatrixXd basis_;  // orthonormal basis of the row space (n x rank)
  RealVec particular_;     // minimum-norm solution M^+ b
};

enum class SolverVariant { feasibility, trace_min };

// reflections: averaged alternating reflections (Douglas-Rachford splitting).
// projections: relaxed alternating projections X <- X + r (P_K P_L X - X).
enum class SolverMethod { reflections, projections };

struct SolverConfig {
  SolverVariant variant = SolverVariant::feasibility;
  SolverMethod method = SolverMethod::reflections;
  int max_iters = 5000;
  double tol = 1e-9;
  double relaxation = 1.0;  // in (0, 2)
  std::uint64_t seed = 0;
  int check_every = 10;
  // Step of the trace objective in the trace_min variant; <= 0 picks
  // 0.1 * mean(y).
  double trace_step = 0.0;
};

/// Throws std::invalid_argument when a field violates its range.
void validate(const SolverConfig& cfg);

struct ResidualSample {
  int iteration = 0;
  double max_residual = 0.0;
};

struct SolverResult {
  HermMat X_hat;
  double affine_residual = 0.0;  // ||A(X) - y|| / ||y||
  double cone_residual = 0.0;    // sum of |negative eigenvalues|
  double trace_gap = 0.0;        // |tr X - y_0|
  int iterations = 0;
  bool converged = false;
  std::vector<ResidualSample> history;
};

/// Feasibility: a point of {A(X) = y, tr X = y_0} intersected with the PSD cone.
/// trace_min: minimizes tr X over {A(X) = y, X PSD}.
/// converged means all three residuals are <= tol (affine relative to ||y||,
/// cone relative to ||X||_inf, trace relative to y_0).
SolverResult recover(const MeasurementRecord& record, const SolverConfig& cfg = {});

struct SignalEstimate {
  ComplexVec x_hat;
  double eig_gap = 0.0;
};

/// sqrt(lambda_1) v_1 with canonical phase, and lambda_1 - lambda_2.
SignalEstimate extract_signal(const SolverResult& res);
SignalEstimate extract_signal(const HermMat& x_hat);

/// ||u u* - v v*||_2.
double phase_distance(const ComplexVec& u, const ComplexVec& v);

/// ||X - x x*||_2.
double lift_distance(const HermMat& x_hat, const ComplexVec& x);

}  // namespace liftkit

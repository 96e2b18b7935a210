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
#include <iosfwd>
#include <string>
#include <vector>

#include "liftkit/designs.hpp"
#include "liftkit/linalg.hpp"
#include "liftkit/rng.hpp"

namespace liftkit {

/// Sampled vectors a_i, squared overlaps y_i = |<a_i, x>|^2 and the
/// intensity y_0 = ||x||^2 of a hidden signal.
struct MeasurementRecord {
  int signal_dim = 0;
  std::vector<ComplexVec> vectors;
  std::vector<double> amplitudes;
  double intensity = 0.0;
  std::uint64_t seed = 0;
  std::string source_label;

  int m() const { return static_cast<int>(vectors.size()); }
};

/// m indices drawn iid from the ensemble weights by inverse CDF.
std::vector<std::size_t> sample_indices(const DesignEnsemble& e, int m, Rng& rng);

std::vector<ComplexVec> sample_vectors(const DesignEnsemble& e, int m, Rng& rng);
std::vector<ComplexVec> sample_vectors(const DesignEnsemble& e, int m, std::uint64_t seed);

/// Requires unit x. Amplitudes depend on x only through x x*, so a global
/// phase leaves the record unchanged.
MeasurementRecord measure(const ComplexVec& x, std::vector<ComplexVec> vectors,
                          std::uint64_t seed = 0, std::string label = {});

/// (tr(A_1 Z), ..., tr(A_m Z)) with A_i = a_i a_i*.
RealVec apply_A(std::span<const ComplexVec> vectors, const HermMat& z);

/// sum_i u_i A_i.
HermMat apply_A_adjoint(std::span<const ComplexVec> vectors, const RealVec& u, int dim);

/// (d+1) d / m * sum_i A_i tr(A_i Z).
HermMat apply_R(std::span<const ComplexVec> vectors, const HermMat& z);

/// Expectation of R over one draw from the ensemble: (d+1) d sum_i p_i A_i tr(A_i Z).
HermMat expected_R(const DesignEnsemble& e, const HermMat& z);

/// Matrix of Z -> expected_R(e, Z) in hvec coordinates (d^2 x d^2, symmetric).
Eigen::MatrixXd expected_R_matrix(const DesignEnsemble& e);

/// Largest entry of |expected_R_matrix(e) - (I + Pi_Id)|, Pi_Id = hvec(Id) hvec(Id)^T.
double isotropy_deviation_exact(const DesignEnsemble& e);

/// ||expected_R(e, Z) - (Z + tr(Z) Id)||_2 / ||Z||_2.
double isotropy_residual_exact(const DesignEnsemble& e, const HermMat& z);

/// Random Hermitian probe with iid complex Gaussian entries, symmetrized.
HermMat random_hermitian(int dim, Rng& rng);

/// Monte-Carlo average of R over `trials` batches of m sampled vectors,
/// applied to one random probe Z drawn from `seed`; returns
/// ||average - (Z + tr(Z) Id)||_2 / ||Z||_2.
double isotropy_residual(const DesignEnsemble& e, int trials, int m, std::uint64_t seed);

/// 5 t d^{-gamma}.
double truncation_threshold(int dim, int t_order, double gamma);

struct TruncationFlags {
  double gamma = 0.0;
  int t_order = 0;
  std::vector<bool> e_flags;  // |<a_i, x>|^2 below threshold
  std::vector<bool> g_flags;  // |<z, a_i>|^2 below threshold
};

TruncationFlags truncation_flags(const ComplexVec& x, const ComplexVec& z,
                                 std::span<const ComplexVec> vectors, double gamma, int t_order);

/// apply_R with term i kept only when both flags are set.
HermMat apply_R_truncated(std::span<const ComplexVec> vectors, const TruncationFlags& flags,
                          const HermMat& z);

/// Operator norm (Frobenius geometry on H^d) of E[R_Z - R] for one draw from
/// the ensemble, computed exactly as a weighted sum over ensemble members.
double truncation_bias_exact(const DesignEnsemble& e, const ComplexVec& x, const ComplexVec& z,
                             double gamma, int t_order);

/// 4^{1-t} d^{2 - t(1-gamma)}.
double truncation_bias_bound(int dim, int t_order, double gamma);

/// 4^{-t} d^{-t(1-gamma)}.
double tail_probability_bound(int dim, int t_order, double gamma);

struct MomentRow {
  int k = 0;
  double exact = 0.0;  // E[xi^k] over the ensemble weights
  double bound = 0.0;  // k! / d^k
};

struct MomentReport {
  int dim = 0;
  int t_order = 0;
  double gamma = 0.0;
  std::vector<MomentRow> moments;
  double threshold = 0.0;
  double tail_exact = 0.0;  // ensemble probability of xi >= threshold
  long long samples = 0;
  long long tail_count = 0;
  double tail_frequency = 0.0;
  double tail_sigma = 0.0;  // sample standard error of tail_frequency
  double tail_bound = 0.0;
  bool mean_ok = false;     // |E[xi] - 1/d| <= 1e-12
  bool moments_ok = false;  // E[xi^k] <= k!/d^k for all k
  bool tail_ok = false;     // tail_frequency <= tail_bound + 5 sigma
};

/// xi = |<a, x>|^2 for a drawn from the ensemble.
MomentReport moment_tail_experiment(const DesignEnsemble& e, const ComplexVec& x, int t_order,
                                    double gamma, long long samples, std::uint64_t seed);

// CSV layout:
//   d,m,seed,label
//   <d>,<m>,<seed>,<label>
//   i,re_0..re_{d-1},im_0..im_{d-1},y
//   0,<d empty re>,<d empty im>,<y_0>        intensity row
//   i,<re(a_i)>,<im(a_i)>,<y_i>              i = 1..m
void write_record_csv(std::ostream& out, const MeasurementRecord& rec);
MeasurementRecord read_record_csv(std::istream& in);
void save_record(const std::string& path, const MeasurementRecord& rec);
MeasurementRecord load_record(const std::string& path);

}  // namespace liftkit

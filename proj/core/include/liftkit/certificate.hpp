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

#include "liftkit/designs.hpp"
#include "liftkit/linalg.hpp"

namespace liftkit {

struct InjectivitySpectrum {
  double lambda_min = 0.0;
  RealVec spectrum;        // ascending
  Eigen::MatrixXd matrix;  // (2d-1) x (2d-1), tangent_basis coordinates
};

/// Spectrum of P_T (R - (I + Pi_Id)) P_T restricted to T, in the coordinates
/// of tangent_basis(x).
InjectivitySpectrum injectivity_spectrum(const ComplexVec& x, std::span<const ComplexVec> vectors);

/// m^{-1} ||A(Z)||^2 <= ||Z||_2^2 on `trials` random Hermitian Z.
bool check_upper_bound(std::span<const ComplexVec> vectors, int dim, int trials,
                       std::uint64_t seed = 0);

/// R X - tr(X) Id.
HermMat oneshot_certificate(const ComplexVec& x, std::span<const ComplexVec> vectors);

struct CertificateReport {
  HermMat Y;
  double tangent_error = 0.0;    // ||P_T Y - X||_2
  double complement_norm = 0.0;  // ||P_T^perp Y||_inf
  int legs_used = 0;
  std::vector<bool> success_flags;
  bool is_valid = false;         // tangent_error <= 1/(4d) and complement_norm <= 1/2
};

CertificateReport verify_certificate(const HermMat& y, const ComplexVec& x);

/// Relative distance of hvec(Y) from span{hvec(Id), hvec(A_1), ..., hvec(A_m)}.
double span_residual(const HermMat& y, std::span<const ComplexVec> vectors);

/// injectivity lambda_min > -1/2, verify_certificate(Y).is_valid and
/// span_residual(Y) <= 1e-8.
bool guarantee_check(const ComplexVec& x, std::span<const ComplexVec> vectors, const HermMat& y);

struct GolfingParams {
  double b = 0.125;
  double c = 0.5;
  int r = 0;           // 0: ceil(log2 d) + 2
  int l = 0;           // 0: 10 r
  int m_per_leg = 0;   // 0: ceil(c1 * t * d^{2-gamma} * ln d)
  double gamma = -1.0; // < 0: 1 - 2/t
  int t_order = 3;
  double c1 = 16.0;
  std::uint64_t seed = 0;
  bool override_checks = false;  // skip the design and t >= 3, gamma <= 1 - 2/t requirements
  bool assume_verified = false;  // caller already ran verify_design at t_order
};

/// Fills defaults for dimension d and validates: 0 < b <= 1, c >= sqrt(2) b,
/// 1 <= r <= l, m_per_leg >= 1, gamma in [0, 1]; without override also
/// t_order >= 3 and gamma <= 1 - 2/t.
GolfingParams resolve_params(GolfingParams p, int d);

/// Q = zeta (x z* + z x*) for Q in T, zeta >= 0, unit z (z = x when Q is a
/// multiple of x x* or zero).
struct TangentDecomposition {
  double zeta = 0.0;
  ComplexVec z;
};
TangentDecomposition decompose_tangent(const ComplexVec& x, const HermMat& q);

struct GolfLeg {
  int index = 0;          // 1-based iteration number
  bool golf1 = false;
  bool golf2 = false;
  double golf1_ratio = 0.0;  // ||P_T^perp(R_Q Q - tr(Q) Id)||_inf / ||Q||_2
  double golf2_ratio = 0.0;  // ||P_T(R_Q Q - Q - tr(Q) Id)||_2 / ||Q||_2
  int truncated = 0;         // terms removed by the truncation events
};

struct GolfingReport {
  CertificateReport certificate;
  GolfingParams params;  // resolved
  bool success = false;  // number of successful legs reached r
  std::vector<GolfLeg> legs;
  std::vector<HermMat> q_sequence;  // X, Q_1, ..., Q_successes
  std::vector<double> q_norms;
  std::vector<ComplexVec> vectors;  // every sampled vector, all legs
};

/// Randomized golfing construction of an approximate dual certificate.
/// Throws std::invalid_argument when the ensemble does not verify as a
/// t_order-design (unless override_checks).
GolfingReport golfing_certificate(const ComplexVec& x, const DesignEnsemble& e, GolfingParams params);

}  // namespace liftkit

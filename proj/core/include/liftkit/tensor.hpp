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
#include <span>
#include <vector>

#include "liftkit/linalg.hpp"

namespace liftkit {

// Brute-force operators on (C^d)^{(x)k}, indexed row-major in mixed radix d:
// basis vector e_{i_1} (x) ... (x) e_{i_k} sits at sum_j i_j d^{k-1-j}.
// Intended as an exact oracle for small cases; every constructor enforces
// d^k <= kMaxTensorSide.

inline constexpr std::int64_t kMaxTensorSide = 4096;

struct TensorMat {
  int dim = 0;
  int order = 0;
  Eigen::MatrixXcd entries;  // d^k x d^k
};

/// Throws std::length_error when d^k exceeds kMaxTensorSide.
std::int64_t tensor_side(int dim, int order);

/// binom(d + k - 1, k).
std::uint64_t dim_sym(int dim, int order);

/// Operator sending z_1 (x) ... (x) z_k to z_{perm[0]} (x) ... (x) z_{perm[k-1]}
/// (zero-based perm).
TensorMat permutation_operator(int dim, std::span<const int> perm);

/// (1/k!) sum over S_k of permutation operators.
TensorMat symmetrizer(int dim, int order);

/// A_1 (x) ... (x) A_k.
TensorMat kron(std::span<const HermMat> factors);

TensorMat tensor_power(const HermMat& a, int order);

TensorMat multiply(const TensorMat& a, const TensorMat& b);

/// Traces out every factor after the first `keep` (tr_{keep+1, ..., k}).
Eigen::MatrixXcd trace_out_tail(const TensorMat& t, int keep);

// The partial traces below are not Hermitian in general (B A is not), so
// both routes return plain complex matrices.

/// tr_2(P_Sym2 (A (x) B)) by explicit tensor construction and contraction.
Eigen::MatrixXcd ptrace_sym2_bruteforce(const HermMat& a, const HermMat& b);

/// tr_{2,3}(P_Sym3 (A (x) B (x) C)) by explicit tensor construction and contraction.
Eigen::MatrixXcd ptrace_sym3_bruteforce(const HermMat& a, const HermMat& b, const HermMat& c);

/// Closed form of tr_2(P_Sym2 (A (x) B)): (tr(B) A + B A) / 2.
Eigen::MatrixXcd ptrace_sym2_closed(const HermMat& a, const HermMat& b);

/// Closed form of tr_{2,3}(P_Sym3 (A (x) B (x) C)):
/// (A tr B tr C + BA tr C + CA tr B + A tr(BC) + CBA + BCA) / 6.
Eigen::MatrixXcd ptrace_sym3_closed(const HermMat& a, const HermMat& b, const HermMat& c);

/// sum_i p_i (w_i w_i*)^{(x)k}.
TensorMat design_moment_lhs(std::span<const ComplexVec> vectors, std::span<const double> weights,
                            int order);

/// Coordinates of w^{(x)k} in the orthonormal occupation-number basis of
/// Sym^k (one entry per multiset of size k over {0..d-1}, lexicographic).
/// Exact and cheap: the entry for occupation numbers (n_0..n_{d-1}) equals
/// sqrt(k! / prod n_j!) prod w_j^{n_j}.
ComplexVec sym_coordinates(const ComplexVec& w, int order);

/// Checks on `trials` random Hermitian Z that d^{-1} Pi_Id is idempotent and
/// that 0 <= (Z, Pi_Id Z) <= d (Z, Z). Pi_Id Z := tr(Z) Id.
bool pi_id_check(int dim, std::uint64_t seed = 1, int trials = 20, double tol = 1e-12);

HermMat apply_pi_id(const HermMat& z);

}  // namespace liftkit

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
#include <optional>
#include <string>
#include <vector>

#include "liftkit/linalg.hpp"

namespace liftkit {

/// Finite weighted set of unit vectors in C^d claiming to be a t-design.
/// order_claim 0 marks an approximate (Haar-sampled) ensemble.
struct DesignEnsemble {
  int dim = 0;
  int order_claim = 0;
  std::vector<ComplexVec> vectors;
  std::vector<double> weights;
  std::string label;

  std::size_t size() const { return vectors.size(); }
};

/// Validates and assembles an ensemble. Throws std::invalid_argument when a
/// vector is not unit-norm or has the wrong length, a weight is negative, the
/// weights do not sum to 1 within 1e-12, or the ensemble is empty.
DesignEnsemble make_ensemble(int dim, int order_claim, std::vector<ComplexVec> vectors,
                             std::vector<double> weights, std::string label);

/// Same, with uniform weights 1/N.
DesignEnsemble make_uniform_ensemble(int dim, int order_claim, std::vector<ComplexVec> vectors,
                                     std::string label);

bool is_prime(int n);

/// d + 1 mutually unbiased bases for prime d (standard basis first).
DesignEnsemble mub_maximal(int d);

/// All stabilizer states on n qubits, 1 <= n <= 4, in breadth-first
/// discovery order from |0...0>.
DesignEnsemble stabilizer_states(int n);

/// 2^n * prod_{k=1}^n (2^k + 1).
std::uint64_t stabilizer_count(int n);

/// Stabilizer states of the smallest power-of-two dimension >= d restricted
/// to the first d coordinates and renormalized. Weights are proportional to
/// the sixth power of the restricted norm, which makes the result an exact
/// weighted 3-design (hence also a 2- and 1-design). 2 <= d <= 16.
DesignEnsemble projected_stabilizer_design(int d);

/// N normalized complex Gaussian vectors, uniform weights, order_claim 0.
DesignEnsemble haar_ensemble(int d, int n, std::uint64_t seed);

struct DesignReport {
  int order_tested = 0;
  double frame_potential = 0.0;
  double target_potential = 0.0;
  std::optional<double> operator_deviation;
  bool passed = false;
  double tolerance = 0.0;
};

/// Frame potential sum_ij p_i p_j |<w_i, w_j>|^{2t} and, when d^t fits the
/// tensor guard, the operator-norm distance of the t-th moment from
/// P_Sym / dim Sym. Both are evaluated in coordinates of Sym^t, which is
/// exact since every term is supported there.
DesignReport verify_design(const DesignEnsemble& e, int t, double tol = 1e-8);

/// sum_i p_i (c_i c_i*) with c_i = sym_coordinates(w_i, t).
Eigen::MatrixXcd sym_moment(const DesignEnsemble& e, int t);

/// binom(d + ceil(t/2) - 1, ceil(t/2)) * binom(d + floor(t/2) - 1, floor(t/2)).
std::uint64_t min_design_size(int d, int t);

// Text serialization ("LIFTKIT-DESIGN v1").
void write_design(std::ostream& out, const DesignEnsemble& e);
DesignEnsemble read_design(std::istream& in);
void save_design(const std::string& path, const DesignEnsemble& e);
DesignEnsemble load_design(const std::string& path);

}  // namespace liftkit

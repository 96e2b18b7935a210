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

#include <cmath>

#include "liftkit/linalg.hpp"
#include "liftkit/rng.hpp"

namespace liftkit::testing {

inline ComplexVec random_unit(int d, Rng& rng) {
  ComplexVec v(d);
  for (int j = 0; j < d; ++j) v(j) = rng.complex_normal();
  return v / v.norm();
}

inline Eigen::MatrixXcd random_complex(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

inline HermMat random_herm(int d, Rng& rng) { return HermMat(random_complex(d, d, rng)); }

inline HermMat random_psd(int d, Rng& rng) {
  const Eigen::MatrixXcd g = random_complex(d, d, rng);
  return HermMat(g * g.adjoint());
}

// Random element of T = { x z* + z x* }.
inline HermMat random_tangent(const ComplexVec& x, Rng& rng) {
  const ComplexVec z = random_unit(static_cast<int>(x.size()), rng) * (0.5 + rng.uniform());
  return HermMat(x * z.adjoint() + z * x.adjoint());
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace liftkit::testing

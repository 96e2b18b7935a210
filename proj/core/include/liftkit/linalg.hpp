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

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace liftkit {

using cplx = std::complex<double>;
using ComplexVec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kEigenTolerance = 1e-10;

/// True when | ||v|| - 1 | <= tol.
bool is_unit(const ComplexVec& v, double tol = kUnitTolerance);

/// Throws std::invalid_argument naming `what` if v is not unit-norm.
void require_unit(const ComplexVec& v, const char* what);

/// Rotates v by a global phase so that its largest-magnitude entry (lowest
/// index on ties) is real and nonnegative.
ComplexVec canonical_phase(const ComplexVec& v);

/// Dense d x d Hermitian matrix.
///
/// Every constructor symmetrizes its input as (M + M*) / 2, so the stored
/// matrix is Hermitian to rounding regardless of how it was produced.
class HermMat {
 public:
  HermMat() = default;
  explicit HermMat(const Eigen::MatrixXcd& m);

  static HermMat zero(int dim);
  static HermMat identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }

  HermMat& operator+=(const HermMat& o);
  HermMat& operator-=(const HermMat& o);
  HermMat& operator*=(double s);

  friend HermMat operator+(HermMat a, const HermMat& b) { return a += b; }
  friend HermMat operator-(HermMat a, const HermMat& b) { return a -= b; }
  friend HermMat operator*(HermMat a, double s) { return a *= s; }
  friend HermMat operator*(double s, HermMat a) { return a *= s; }

 private:
  struct NoSymmetrize {};
  HermMat(Eigen::MatrixXcd m, NoSymmetrize) : m_(std::move(m)) {}

  Eigen::MatrixXcd m_;
};

/// Largest entrywise deviation |M - M*|; zero for HermMat by construction.
double hermiticity_defect(const Eigen::MatrixXcd& m);

/// v v*.
HermMat lift(const ComplexVec& v);

enum class SchattenOrder { trace, frobenius, operator_norm };

double schatten_norm(const HermMat& m, SchattenOrder order);

/// tr(A B). Throws std::invalid_argument on dimension mismatch.
double frobenius_inner(const HermMat& a, const HermMat& b);

/// Orthogonal projection onto T = { x z* + z x* }:
/// Z -> X Z + Z X - tr(X Z) X with X = x x*. Requires a unit anchor.
HermMat tangent_project(const ComplexVec& x, const HermMat& z);

/// Z - tangent_project(x, Z).
HermMat tangent_complement_project(const ComplexVec& x, const HermMat& z);

struct TangentBasis {
  ComplexVec anchor;
  std::vector<HermMat> basis;  // 2d - 1 Frobenius-orthonormal elements; basis[0] = x x*
};

TangentBasis tangent_basis(const ComplexVec& x);

struct EigPair {
  double value = 0.0;
  ComplexVec vector;
};

/// Largest eigenvalue and a unit eigenvector. For a degenerate top eigenvalue
/// the lowest-index eigenvector reported by the solver is returned.
EigPair leading_eigpair(const HermMat& m);

/// Ascending eigenvalues.
RealVec eigenvalues(const HermMat& m);

/// Euclidean projection of `values` onto { v >= 0, sum(v) = total }.
RealVec simplex_project(const RealVec& values, double total);

/// Frobenius-nearest PSD matrix with trace exactly `target_trace`.
HermMat psd_trace_project(const HermMat& m, double target_trace);

/// Frobenius-nearest PSD matrix (eigenvalues clipped at zero).
HermMat psd_project(const HermMat& m);

// Real coordinates on H^d.
//
// hvec maps a Hermitian matrix to R^{d^2}: the d diagonal entries, then for
// each pair j < k (row-major) sqrt(2) Re M_jk, then sqrt(2) Im M_jk. The map
// is an isometry: frobenius_inner(A, B) == hvec(A).dot(hvec(B)).
RealVec hvec(const HermMat& m);
HermMat from_hvec(const RealVec& v, int dim);

/// hvec(a a*) without forming the matrix.
RealVec hvec_of_lift(const ComplexVec& a);

}  // namespace liftkit

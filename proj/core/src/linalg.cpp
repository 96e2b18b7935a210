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

#include "liftkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace liftkit {

bool is_unit(const ComplexVec& v, double tol) {
  return v.size() > 0 && std::abs(v.norm() - 1.0) <= tol;
}

void require_unit(const ComplexVec& v, const char* what) {
  if (!is_unit(v))
    throw std::invalid_argument(std::string(what) + " must be a unit vector (norm " +
                                std::to_string(v.norm()) + ")");
}

ComplexVec canonical_phase(const ComplexVec& v) {
  if (v.size() == 0) return v;
  Eigen::Index best = 0;
  double best_abs = std::abs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    // Relative slack so rounding noise does not flip ties between equal magnitudes.
    if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
      best = i;
      best_abs = a;
    }
  }
  if (best_abs == 0.0) return v;
  const cplx phase = std::conj(v(best)) / best_abs;
  ComplexVec out = v * phase;
  out(best) = best_abs;
  return out;
}

HermMat::HermMat(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("HermMat requires a square matrix");
  m_ = 0.5 * (m + m.adjoint());
}

HermMat HermMat::zero(int dim) {
  return HermMat(Eigen::MatrixXcd::Zero(dim, dim), NoSymmetrize{});
}

HermMat HermMat::identity(int dim) {
  return HermMat(Eigen::MatrixXcd::Identity(dim, dim), NoSymmetrize{});
}

HermMat& HermMat::operator+=(const HermMat& o) {
  if (o.dim() != dim()) throw std::invalid_argument("HermMat dimension mismatch");
  m_ += o.m_;
  return *this;
}

HermMat& HermMat::operator-=(const HermMat& o) {
  if (o.dim() != dim()) throw std::invalid_argument("HermMat dimension mismatch");
  m_ -= o.m_;
  return *this;
}

HermMat& HermMat::operator*=(double s) {
  m_ *= s;
  return *this;
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermMat lift(const ComplexVec& v) { return HermMat(v * v.adjoint()); }

RealVec eigenvalues(const HermMat& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double schatten_norm(const HermMat& m, SchattenOrder order) {
  switch (order) {
    case SchattenOrder::frobenius:
      return m.matrix().norm();
    case SchattenOrder::trace:
      return eigenvalues(m).cwiseAbs().sum();
    case SchattenOrder::operator_norm: {
      if (m.dim() == 0) return 0.0;
      return eigenvalues(m).cwiseAbs().maxCoeff();
    }
  }
  return 0.0;
}

double frobenius_inner(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("frobenius_inner: dimension mismatch");
  // tr(AB) = sum_ij conj(A_ij) B_ij for Hermitian A.
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

HermMat tangent_project(const ComplexVec& x, const HermMat& z) {
  require_unit(x, "tangent_project anchor");
  if (x.size() != z.dim()) throw std::invalid_argument("tangent_project: dimension mismatch");
  // With X = x x*: XZ + ZX - (x* Z x) X, built from the vector w = Z x.
  const ComplexVec w = z.matrix() * x;
  const cplx xzx = x.dot(w);
  Eigen::MatrixXcd out = x * w.adjoint() + w * x.adjoint() - xzx.real() * (x * x.adjoint());
  return HermMat(out);
}

HermMat tangent_complement_project(const ComplexVec& x, const HermMat& z) {
  return z - tangent_project(x, z);
}

TangentBasis tangent_basis(const ComplexVec& x) {
  require_unit(x, "tangent_basis anchor");
  const int d = static_cast<int>(x.size());
  std::vector<HermMat> generators;
  generators.reserve(2 * d + 1);
  generators.push_back(lift(x));
  const cplx i_unit(0.0, 1.0);
  for (int k = 0; k < d; ++k) {
    ComplexVec e = ComplexVec::Zero(d);
    e(k) = 1.0;
    generators.emplace_back(x * e.adjoint() + e * x.adjoint());
    generators.emplace_back(i_unit * (x * e.adjoint() - e * x.adjoint()));
  }

  // Modified Gram-Schmidt in the Frobenius geometry, dropping dependent generators.
  TangentBasis out{x, {}};
  out.basis.reserve(2 * d - 1);
  for (const auto& g : generators) {
    HermMat v = g;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out.basis) v -= frobenius_inner(b, v) * b;
    const double n = schatten_norm(v, SchattenOrder::frobenius);
    if (n > 1e-8) out.basis.push_back(v * (1.0 / n));
    if (static_cast<int>(out.basis.size()) == 2 * d - 1) break;
  }
  return out;
}

EigPair leading_eigpair(const HermMat& m) {
  if (m.dim() == 0) throw std::invalid_argument("leading_eigpair: empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix());
  const auto& vals = es.eigenvalues();
  const int n = m.dim();
  const double top = vals(n - 1);
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  int pick = n - 1;
  for (int i = 0; i < n; ++i) {
    if (top - vals(i) <= kEigenTolerance * scale) {
      pick = i;
      break;
    }
  }
  ComplexVec v = es.eigenvectors().col(pick);
  v.normalize();
  return {vals(pick), v};
}

RealVec simplex_project(const RealVec& values, double total) {
  if (total < 0.0) throw std::invalid_argument("simplex_project: negative total");
  const Eigen::Index n = values.size();
  if (n == 0) return values;
  if (total == 0.0) return RealVec::Zero(n);
  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += sorted[k];
    const double candidate = (cumsum - total) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  return (values.array() - theta).cwiseMax(0.0).matrix();
}

namespace {

HermMat rebuild(const Eigen::MatrixXcd& vecs, const RealVec& vals) {
  return HermMat(vecs * vals.asDiagonal() * vecs.adjoint());
}

}  // namespace

HermMat psd_trace_project(const HermMat& m, double target_trace) {
  if (target_trace < 0.0) throw std::invalid_argument("psd_trace_project: negative trace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix());
  return rebuild(es.eigenvectors(), simplex_project(es.eigenvalues(), target_trace));
}

HermMat psd_project(const HermMat& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix());
  return rebuild(es.eigenvectors(), es.eigenvalues().cwiseMax(0.0));
}

RealVec hvec(const HermMat& m) {
  const int d = m.dim();
  const int pairs = d * (d - 1) / 2;
  RealVec out(d * d);
  for (int j = 0; j < d; ++j) out(j) = m(j, j).real();
  int p = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k, ++p) {
      out(d + p) = std::numbers::sqrt2 * m(j, k).real();
      out(d + pairs + p) = std::numbers::sqrt2 * m(j, k).imag();
    }
  return out;
}

HermMat from_hvec(const RealVec& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw std::invalid_argument("from_hvec: length is not dim^2");
  const int pairs = dim * (dim - 1) / 2;
  Eigen::MatrixXcd m(dim, dim);
  for (int j = 0; j < dim; ++j) m(j, j) = v(j);
  int p = 0;
  const double s = 1.0 / std::numbers::sqrt2;
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k, ++p) {
      m(j, k) = cplx(s * v(dim + p), s * v(dim + pairs + p));
      m(k, j) = std::conj(m(j, k));
    }
  return HermMat(m);
}

RealVec hvec_of_lift(const ComplexVec& a) {
  const int d = static_cast<int>(a.size());
  const int pairs = d * (d - 1) / 2;
  RealVec out(d * d);
  for (int j = 0; j < d; ++j) out(j) = std::norm(a(j));
  int p = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k, ++p) {
      const cplx e = a(j) * std::conj(a(k));
      out(d + p) = std::numbers::sqrt2 * e.real();
      out(d + pairs + p) = std::numbers::sqrt2 * e.imag();
    }
  return out;
}

}  // namespace liftkit

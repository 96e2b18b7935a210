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

#include "liftkit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "liftkit/rng.hpp"

namespace liftkit {

AffineSet::AffineSet(const Eigen::MatrixXd& rows, const RealVec& rhs) {
  if (rows.rows() != rhs.size()) throw std::invalid_argument("AffineSet: rhs length mismatch");
  const Eigen::Index n = rows.cols();
  if (rows.rows() == 0) {
    basis_.resize(n, 0);
    particular_ = RealVec::Zero(n);
    return;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVec& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    while (r < s.size() && s(r) > 1e-12 * s(0)) ++r;
  basis_ = svd.matrixV().leftCols(r);
  const RealVec coeffs = (svd.matrixU().leftCols(r).transpose() * rhs).cwiseQuotient(s.head(r));
  particular_ = basis_ * coeffs;
}

RealVec AffineSet::project(const RealVec& v) const {
  return v - basis_ * (basis_.transpose() * v) + particular_;
}

double AffineSet::row_space_residual(const RealVec& v) const {
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  return (v - basis_ * (basis_.transpose() * v)).norm() / norm;
}

void validate(const SolverConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
  if (!(cfg.relaxation > 0.0 && cfg.relaxation < 2.0))
    throw std::invalid_argument("solver: relaxation must lie in (0, 2)");
  if (cfg.check_every < 1) throw std::invalid_argument("solver: check_every must be >= 1");
}

namespace {

struct Residuals {
  double affine = 0.0;
  double cone = 0.0;
  double trace_gap = 0.0;
  double op_norm = 0.0;
};

Residuals measure_residuals(const Eigen::MatrixXd& a_rows, const RealVec& y, double y0,
                            const RealVec& c, int d) {
  Residuals r;
  const double ynorm = y.norm();
  const double diff = (a_rows * c - y).norm();
  r.affine = ynorm > 0.0 ? diff / ynorm : diff;
  r.trace_gap = std::abs(c.head(d).sum() - y0);
  const RealVec ev = eigenvalues(from_hvec(c, d));
  r.cone = (-ev.array()).max(0.0).sum();
  r.op_norm = ev.cwiseAbs().maxCoeff();
  return r;
}

bool within(const Residuals& r, double tol, double y0) {
  return r.affine <= tol && r.cone <= tol * std::max(r.op_norm, 1e-300) &&
         r.trace_gap <= tol * std::max(y0, 1e-300);
}

double worst(const Residuals& r, double y0) {
  return std::max({r.affine, r.op_norm > 0.0 ? r.cone / r.op_norm : r.cone,
                   y0 > 0.0 ? r.trace_gap / y0 : r.trace_gap});
}

}  // namespace

SolverResult recover(const MeasurementRecord& record, const SolverConfig& cfg) {
  validate(cfg);
  const int d = record.signal_dim;
  const int m = record.m();
  if (d < 1) throw std::invalid_argument("recover: record has no dimension");
  if (static_cast<int>(record.amplitudes.size()) != m)
    throw std::invalid_argument("recover: amplitude count mismatch");
  const int n = d * d;
  const bool feasibility = cfg.variant == SolverVariant::feasibility;

  Eigen::MatrixXd a_rows(m, n);
  for (int i = 0; i < m; ++i) {
    if (record.vectors[i].size() != d) throw std::invalid_argument("recover: vector dimension mismatch");
    a_rows.row(i) = hvec_of_lift(record.vectors[i]).transpose();
  }
  const RealVec y = Eigen::Map<const RealVec>(record.amplitudes.data(), m);

  double y0 = record.intensity;
  if (!feasibility && !(y0 > 0.0) && m > 0) y0 = y.mean() * d;

  Eigen::MatrixXd rows = a_rows;
  RealVec rhs = y;
  if (feasibility) {
    rows.conservativeResize(m + 1, n);
    rows.row(m) = hvec(HermMat::identity(d)).transpose();
    rhs.conservativeResize(m + 1);
    rhs(m) = y0;
  }
  const AffineSet affine(rows, rhs);

  double step = cfg.trace_step;
  if (!(step > 0.0)) step = m > 0 ? 0.1 * std::max(y.mean(), 1e-12) : 0.1;
  const auto cone_step = [&](const RealVec& v) -> RealVec {
    if (feasibility) return hvec(psd_trace_project(from_hvec(v, d), y0));
    RealVec shifted = v;
    shifted.head(d).array() -= step;
    return hvec(psd_project(from_hvec(shifted, d)));
  };

  Rng rng(cfg.seed);
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd x0 = g * g.adjoint();
  x0 *= y0 / std::max(x0.trace().real(), 1e-300);
  RealVec z = hvec(HermMat(x0));

  SolverResult result;
  RealVec candidate = z;
  const double lambda = cfg.relaxation;
  int it = 0;
  while (it < cfg.max_iters) {
    ++it;
    if (cfg.method == SolverMethod::reflections) {
      const RealVec p = affine.project(z);
      candidate = cone_step(2.0 * p - z);
      z += lambda * (candidate - p);
    } else {
      candidate = cone_step(affine.project(z));
      z += lambda * (candidate - z);
    }
    if (it % cfg.check_every == 0 || it == cfg.max_iters) {
      const Residuals r = measure_residuals(a_rows, y, y0, candidate, d);
      result.history.push_back({it, worst(r, y0)});
      if (within(r, cfg.tol, y0)) {
        result.converged = true;
        break;
      }
    }
  }
  const Residuals r = measure_residuals(a_rows, y, y0, candidate, d);
  result.X_hat = from_hvec(candidate, d);
  result.affine_residual = r.affine;
  result.cone_residual = r.cone;
  result.trace_gap = r.trace_gap;
  result.iterations = it;
  result.converged = within(r, cfg.tol, y0);
  return result;
}

SignalEstimate extract_signal(const HermMat& x_hat) {
  const int n = x_hat.dim();
  const EigPair top = leading_eigpair(x_hat);
  const RealVec ev = eigenvalues(x_hat);
  const double second = n >= 2 ? ev(n - 2) : 0.0;
  SignalEstimate out;
  out.x_hat = std::sqrt(std::max(top.value, 0.0)) * canonical_phase(top.vector);
  out.eig_gap = ev(n - 1) - second;
  return out;
}

SignalEstimate extract_signal(const SolverResult& res) { return extract_signal(res.X_hat); }

double phase_distance(const ComplexVec& u, const ComplexVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("phase_distance: dimension mismatch");
  return (u * u.adjoint() - v * v.adjoint()).norm();
}

double lift_distance(const HermMat& x_hat, const ComplexVec& x) {
  if (x.size() != x_hat.dim()) throw std::invalid_argument("lift_distance: dimension mismatch");
  return (x_hat.matrix() - x * x.adjoint()).norm();
}

}  // namespace liftkit

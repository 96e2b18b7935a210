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

#include "liftkit/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "liftkit/measurement.hpp"
#include "liftkit/rng.hpp"
#include "liftkit/solver.hpp"

namespace liftkit {

InjectivitySpectrum injectivity_spectrum(const ComplexVec& x, std::span<const ComplexVec> vectors) {
  require_unit(x, "injectivity_spectrum anchor");
  const int d = static_cast<int>(x.size());
  const TangentBasis tb = tangent_basis(x);
  const auto k = static_cast<Eigen::Index>(tb.basis.size());
  const auto m = static_cast<Eigen::Index>(vectors.size());

  // coeffs(i, k) = tr(A_i B_k)
  Eigen::MatrixXd coeffs(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (vectors[i].size() != d) throw std::invalid_argument("injectivity_spectrum: dimension mismatch");
    for (Eigen::Index c = 0; c < k; ++c)
      coeffs(i, c) = vectors[i].dot(tb.basis[c].matrix() * vectors[i]).real();
  }
  RealVec traces(k);
  for (Eigen::Index c = 0; c < k; ++c) traces(c) = tb.basis[c].trace();

  InjectivitySpectrum out;
  out.matrix = Eigen::MatrixXd::Zero(k, k);
  if (m > 0) out.matrix = (static_cast<double>(d + 1) * d / static_cast<double>(m)) * (coeffs.transpose() * coeffs);
  out.matrix -= Eigen::MatrixXd::Identity(k, k);
  out.matrix -= traces * traces.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.matrix, Eigen::EigenvaluesOnly);
  out.spectrum = es.eigenvalues();
  out.lambda_min = out.spectrum(0);
  return out;
}

bool check_upper_bound(std::span<const ComplexVec> vectors, int dim, int trials, std::uint64_t seed) {
  if (vectors.empty()) return true;
  Rng rng(seed);
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    const HermMat z = random_hermitian(dim, rng);
    const double lhs = apply_A(vectors, z).squaredNorm() / static_cast<double>(vectors.size());
    const double rhs = frobenius_inner(z, z);
    ok = ok && lhs <= rhs * (1.0 + 1e-12);
  }
  return ok;
}

HermMat oneshot_certificate(const ComplexVec& x, std::span<const ComplexVec> vectors) {
  require_unit(x, "oneshot_certificate anchor");
  const HermMat big_x = lift(x);
  return apply_R(vectors, big_x) - HermMat::identity(static_cast<int>(x.size())) * big_x.trace();
}

CertificateReport verify_certificate(const HermMat& y, const ComplexVec& x) {
  const int d = static_cast<int>(x.size());
  const HermMat yt = tangent_project(x, y);
  CertificateReport r;
  r.Y = y;
  r.tangent_error = schatten_norm(yt - lift(x), SchattenOrder::frobenius);
  r.complement_norm = schatten_norm(y - yt, SchattenOrder::operator_norm);
  r.is_valid = r.tangent_error <= 1.0 / (4.0 * d) && r.complement_norm <= 0.5;
  return r;
}

double span_residual(const HermMat& y, std::span<const ComplexVec> vectors) {
  const int d = y.dim();
  const auto m = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd rows(m + 1, d * d);
  for (Eigen::Index i = 0; i < m; ++i) rows.row(i) = hvec_of_lift(vectors[i]).transpose();
  rows.row(m) = hvec(HermMat::identity(d)).transpose();
  const AffineSet span(rows, RealVec::Zero(m + 1));
  return span.row_space_residual(hvec(y));
}

bool guarantee_check(const ComplexVec& x, std::span<const ComplexVec> vectors, const HermMat& y) {
  if (injectivity_spectrum(x, vectors).lambda_min <= -0.5) return false;
  if (!verify_certificate(y, x).is_valid) return false;
  return span_residual(y, vectors) <= 1e-8;
}

GolfingParams resolve_params(GolfingParams p, int d) {
  if (d < 2) throw std::invalid_argument("golfing: dimension must be >= 2");
  if (p.t_order < 1) throw std::invalid_argument("golfing: t_order must be >= 1");
  if (p.gamma < 0.0) p.gamma = std::max(0.0, 1.0 - 2.0 / p.t_order);
  if (p.r <= 0) p.r = static_cast<int>(std::ceil(std::log2(static_cast<double>(d)) - 1e-12)) + 2;
  if (p.l <= 0) p.l = 10 * p.r;
  if (p.m_per_leg <= 0) {
    if (!(p.c1 > 0.0)) throw std::invalid_argument("golfing: c1 must be positive");
    const double dd = d;
    p.m_per_leg = static_cast<int>(std::ceil(p.c1 * p.t_order * std::pow(dd, 2.0 - p.gamma) * std::log(dd)));
  }
  if (!(p.b > 0.0 && p.b <= 1.0)) throw std::invalid_argument("golfing: need 0 < b <= 1");
  if (p.c < std::numbers::sqrt2 * p.b - 1e-15) throw std::invalid_argument("golfing: need c >= sqrt(2) b");
  if (p.r > p.l) throw std::invalid_argument("golfing: need r <= l");
  if (p.gamma > 1.0) throw std::invalid_argument("golfing: gamma must lie in [0, 1]");
  if (!p.override_checks) {
    if (p.t_order < 3) throw std::invalid_argument("golfing: design order t >= 3 required");
    if (p.gamma > 1.0 - 2.0 / p.t_order + 1e-12)
      throw std::invalid_argument("golfing: gamma must satisfy gamma <= 1 - 2/t");
  }
  return p;
}

TangentDecomposition decompose_tangent(const ComplexVec& x, const HermMat& q) {
  // With Q = x w* + w x* and x* w real: w = Q x - (x* Q x / 2) x.
  const ComplexVec qx = q.matrix() * x;
  const double xqx = x.dot(qx).real();
  const ComplexVec w = qx - 0.5 * xqx * x;
  const double zeta = w.norm();
  if (zeta <= 1e-14 * std::max(1.0, q.matrix().norm())) return {zeta, x};
  return {zeta, w / zeta};
}

GolfingReport golfing_certificate(const ComplexVec& x, const DesignEnsemble& e, GolfingParams params) {
  require_unit(x, "golfing_certificate anchor");
  const int d = e.dim;
  if (x.size() != d) throw std::invalid_argument("golfing_certificate: dimension mismatch");
  GolfingReport report;
  report.params = resolve_params(params, d);
  const GolfingParams& p = report.params;
  if (!p.override_checks && !p.assume_verified) {
    const DesignReport dr = verify_design(e, p.t_order, 1e-8);
    if (!dr.passed)
      throw std::invalid_argument("golfing_certificate: ensemble '" + e.label + "' is not a " +
                                  std::to_string(p.t_order) + "-design");
  }

  const HermMat big_x = lift(x);
  const HermMat id = HermMat::identity(d);
  HermMat y = HermMat::zero(d);
  HermMat q = big_x;
  report.q_sequence.push_back(q);
  report.q_norms.push_back(schatten_norm(q, SchattenOrder::frobenius));

  int successes = 0;
  int i = 1;
  // Stops once r legs have succeeded, so a successful run has exactly r.
  while (i <= p.l && successes < p.r) {
    Rng rng = Rng::stream(p.seed, {static_cast<std::uint64_t>(i)});
    auto batch = sample_vectors(e, p.m_per_leg, rng);
    const auto dec = decompose_tangent(x, q);
    const auto flags = truncation_flags(x, dec.z, batch, p.gamma, p.t_order);
    const HermMat v = apply_R_truncated(batch, flags, q) - id * q.trace();
    const double qn = schatten_norm(q, SchattenOrder::frobenius);

    GolfLeg leg;
    leg.index = i;
    for (std::size_t k = 0; k < batch.size(); ++k)
      if (!(flags.e_flags[k] && flags.g_flags[k])) ++leg.truncated;
    const double g1 = schatten_norm(tangent_complement_project(x, v), SchattenOrder::operator_norm);
    const double g2 = schatten_norm(tangent_project(x, v - q), SchattenOrder::frobenius);
    leg.golf1_ratio = qn > 0.0 ? g1 / qn : g1;
    leg.golf2_ratio = qn > 0.0 ? g2 / qn : g2;
    leg.golf1 = g1 <= p.b * qn;
    leg.golf2 = g2 <= p.c * qn;
    const bool ok = leg.golf1 && leg.golf2;
    report.certificate.success_flags.push_back(ok);
    report.legs.push_back(leg);
    for (auto& a : batch) report.vectors.push_back(std::move(a));

    if (ok) {
      ++successes;
      y += v;
      q = big_x - tangent_project(x, y);
      report.q_sequence.push_back(q);
      report.q_norms.push_back(schatten_norm(q, SchattenOrder::frobenius));
    }
    ++i;
  }

  const CertificateReport verified = verify_certificate(y, x);
  report.certificate.Y = y;
  report.certificate.tangent_error = verified.tangent_error;
  report.certificate.complement_norm = verified.complement_norm;
  report.certificate.is_valid = verified.is_valid;
  report.certificate.legs_used = i - 1;
  report.success = successes == p.r;
  return report;
}

}  // namespace liftkit

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

#include "liftkit/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace liftkit {

std::vector<std::size_t> sample_indices(const DesignEnsemble& e, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_vectors: m must be >= 1");
  std::vector<double> cdf(e.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) cdf[i] = (acc += e.weights[i]);
  std::vector<std::size_t> out(m);
  for (int k = 0; k < m; ++k) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Zero-weight tail entries share the final cdf value; step back to a weighted one.
    if (it == cdf.end()) --it;
    out[k] = static_cast<std::size_t>(it - cdf.begin());
  }
  return out;
}

std::vector<ComplexVec> sample_vectors(const DesignEnsemble& e, int m, Rng& rng) {
  std::vector<ComplexVec> out;
  out.reserve(m);
  for (auto idx : sample_indices(e, m, rng)) out.push_back(e.vectors[idx]);
  return out;
}

std::vector<ComplexVec> sample_vectors(const DesignEnsemble& e, int m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_vectors(e, m, rng);
}

MeasurementRecord measure(const ComplexVec& x, std::vector<ComplexVec> vectors, std::uint64_t seed,
                          std::string label) {
  require_unit(x, "measure: signal");
  MeasurementRecord rec;
  rec.signal_dim = static_cast<int>(x.size());
  rec.amplitudes.reserve(vectors.size());
  for (const auto& a : vectors) {
    if (a.size() != x.size()) throw std::invalid_argument("measure: dimension mismatch");
    rec.amplitudes.push_back(std::norm(a.dot(x)));
  }
  rec.vectors = std::move(vectors);
  rec.intensity = x.squaredNorm();
  rec.seed = seed;
  rec.source_label = std::move(label);
  return rec;
}

namespace {

Eigen::MatrixXcd stack(std::span<const ComplexVec> vectors, int dim) {
  Eigen::MatrixXcd w(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw std::invalid_argument("measurement vector has wrong dimension");
    w.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return w;
}

// Re(a_i* Z a_i) for every column.
RealVec quadratic_forms(const Eigen::MatrixXcd& w, const HermMat& z) {
  const Eigen::MatrixXcd zw = z.matrix() * w;
  return (w.conjugate().cwiseProduct(zw)).colwise().sum().real().transpose();
}

HermMat weighted_lifts(const Eigen::MatrixXcd& w, const RealVec& c) {
  return HermMat(w * c.asDiagonal() * w.adjoint());
}

Eigen::MatrixXd hvec_rows(std::span<const ComplexVec> vectors, int dim) {
  Eigen::MatrixXd h(static_cast<Eigen::Index>(vectors.size()), dim * dim);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    h.row(static_cast<Eigen::Index>(i)) = hvec_of_lift(vectors[i]).transpose();
  return h;
}

}  // namespace

RealVec apply_A(std::span<const ComplexVec> vectors, const HermMat& z) {
  return quadratic_forms(stack(vectors, z.dim()), z);
}

HermMat apply_A_adjoint(std::span<const ComplexVec> vectors, const RealVec& u, int dim) {
  if (u.size() != static_cast<Eigen::Index>(vectors.size()))
    throw std::invalid_argument("apply_A_adjoint: coefficient count mismatch");
  return weighted_lifts(stack(vectors, dim), u);
}

HermMat apply_R(std::span<const ComplexVec> vectors, const HermMat& z) {
  if (vectors.empty()) return HermMat::zero(z.dim());
  const double d = z.dim();
  const auto w = stack(vectors, z.dim());
  const RealVec c = quadratic_forms(w, z) * ((d + 1.0) * d / static_cast<double>(vectors.size()));
  return weighted_lifts(w, c);
}

HermMat expected_R(const DesignEnsemble& e, const HermMat& z) {
  if (z.dim() != e.dim) throw std::invalid_argument("expected_R: dimension mismatch");
  const double d = e.dim;
  const auto w = stack(e.vectors, e.dim);
  const Eigen::Map<const RealVec> p(e.weights.data(), static_cast<Eigen::Index>(e.size()));
  const RealVec c = quadratic_forms(w, z).cwiseProduct(p) * ((d + 1.0) * d);
  return weighted_lifts(w, c);
}

Eigen::MatrixXd expected_R_matrix(const DesignEnsemble& e) {
  const double d = e.dim;
  const Eigen::MatrixXd h = hvec_rows(e.vectors, e.dim);
  const Eigen::Map<const RealVec> p(e.weights.data(), static_cast<Eigen::Index>(e.size()));
  return (d + 1.0) * d * (h.transpose() * p.asDiagonal() * h);
}

double isotropy_deviation_exact(const DesignEnsemble& e) {
  const RealVec id = hvec(HermMat::identity(e.dim));
  Eigen::MatrixXd target = id * id.transpose();
  target.diagonal().array() += 1.0;
  return (expected_R_matrix(e) - target).cwiseAbs().maxCoeff();
}

double isotropy_residual_exact(const DesignEnsemble& e, const HermMat& z) {
  const HermMat target = z + HermMat::identity(z.dim()) * z.trace();
  return schatten_norm(expected_R(e, z) - target, SchattenOrder::frobenius) /
         schatten_norm(z, SchattenOrder::frobenius);
}

HermMat random_hermitian(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return HermMat(g);
}

double isotropy_residual(const DesignEnsemble& e, int trials, int m, std::uint64_t seed) {
  if (trials < 1 || m < 1) throw std::invalid_argument("isotropy_residual: trials and m must be >= 1");
  Rng probe_rng = Rng::stream(seed, {0});
  const HermMat z = random_hermitian(e.dim, probe_rng);
  HermMat avg = HermMat::zero(e.dim);
  for (int k = 0; k < trials; ++k) {
    Rng rng = Rng::stream(seed, {1, static_cast<std::uint64_t>(k)});
    const auto batch = sample_vectors(e, m, rng);
    avg += apply_R(batch, z);
  }
  avg *= 1.0 / trials;
  const HermMat target = z + HermMat::identity(e.dim) * z.trace();
  return schatten_norm(avg - target, SchattenOrder::frobenius) /
         schatten_norm(z, SchattenOrder::frobenius);
}

double truncation_threshold(int dim, int t_order, double gamma) {
  return 5.0 * t_order * std::pow(static_cast<double>(dim), -gamma);
}

TruncationFlags truncation_flags(const ComplexVec& x, const ComplexVec& z,
                                 std::span<const ComplexVec> vectors, double gamma, int t_order) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("truncation_flags: gamma outside [0,1]");
  if (t_order < 1) throw std::invalid_argument("truncation_flags: t_order must be >= 1");
  const double thr = truncation_threshold(static_cast<int>(x.size()), t_order, gamma);
  TruncationFlags flags{gamma, t_order, {}, {}};
  flags.e_flags.reserve(vectors.size());
  flags.g_flags.reserve(vectors.size());
  for (const auto& a : vectors) {
    flags.e_flags.push_back(std::norm(a.dot(x)) < thr);
    flags.g_flags.push_back(std::norm(z.dot(a)) < thr);
  }
  return flags;
}

HermMat apply_R_truncated(std::span<const ComplexVec> vectors, const TruncationFlags& flags,
                          const HermMat& z) {
  if (flags.e_flags.size() != vectors.size() || flags.g_flags.size() != vectors.size())
    throw std::invalid_argument("apply_R_truncated: flag count mismatch");
  if (vectors.empty()) return HermMat::zero(z.dim());
  const double d = z.dim();
  const auto w = stack(vectors, z.dim());
  RealVec c = quadratic_forms(w, z) * ((d + 1.0) * d / static_cast<double>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (!(flags.e_flags[i] && flags.g_flags[i])) c(static_cast<Eigen::Index>(i)) = 0.0;
  return weighted_lifts(w, c);
}

double truncation_bias_exact(const DesignEnsemble& e, const ComplexVec& x, const ComplexVec& z,
                             double gamma, int t_order) {
  const auto flags = truncation_flags(x, z, e.vectors, gamma, t_order);
  const double d = e.dim;
  const Eigen::MatrixXd h = hvec_rows(e.vectors, e.dim);
  RealVec p(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = (flags.e_flags[i] && flags.g_flags[i]) ? 0.0 : e.weights[i];
  if (p.maxCoeff() == 0.0) return 0.0;
  // E[R - R_Z] is PSD in hvec coordinates; its norm is the top eigenvalue.
  const Eigen::MatrixXd bias = (d + 1.0) * d * (h.transpose() * p.asDiagonal() * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bias, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double truncation_bias_bound(int dim, int t_order, double gamma) {
  return std::pow(4.0, 1.0 - t_order) * std::pow(static_cast<double>(dim), 2.0 - t_order * (1.0 - gamma));
}

double tail_probability_bound(int dim, int t_order, double gamma) {
  return std::pow(4.0, -t_order) * std::pow(static_cast<double>(dim), -t_order * (1.0 - gamma));
}

MomentReport moment_tail_experiment(const DesignEnsemble& e, const ComplexVec& x, int t_order,
                                    double gamma, long long samples, std::uint64_t seed) {
  require_unit(x, "moment_tail_experiment: signal");
  if (x.size() != e.dim) throw std::invalid_argument("moment_tail_experiment: dimension mismatch");
  if (t_order < 1) throw std::invalid_argument("moment_tail_experiment: t_order must be >= 1");
  const double d = e.dim;
  MomentReport r;
  r.dim = e.dim;
  r.t_order = t_order;
  r.gamma = gamma;
  r.threshold = truncation_threshold(e.dim, t_order, gamma);
  r.tail_bound = tail_probability_bound(e.dim, t_order, gamma);

  std::vector<double> xi(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) xi[i] = std::norm(e.vectors[i].dot(x));
  double factorial = 1.0;
  r.moments_ok = true;
  for (int k = 1; k <= t_order; ++k) {
    factorial *= k;
    double moment = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) moment += e.weights[i] * std::pow(xi[i], k);
    const double bound = factorial / std::pow(d, k);
    r.moments.push_back({k, moment, bound});
    if (moment > bound + 1e-12) r.moments_ok = false;
  }
  r.mean_ok = std::abs(r.moments.front().exact - 1.0 / d) <= 1e-12;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (xi[i] >= r.threshold) r.tail_exact += e.weights[i];

  r.samples = samples;
  if (samples > 0) {
    Rng rng(seed);
    constexpr int kChunk = 1 << 14;
    for (long long done = 0; done < samples; done += kChunk) {
      const int n = static_cast<int>(std::min<long long>(kChunk, samples - done));
      for (auto idx : sample_indices(e, n, rng))
        if (xi[idx] >= r.threshold) ++r.tail_count;
    }
    r.tail_frequency = static_cast<double>(r.tail_count) / static_cast<double>(samples);
    r.tail_sigma = std::sqrt(r.tail_frequency * (1.0 - r.tail_frequency) / static_cast<double>(samples));
  }
  r.tail_ok = r.tail_frequency <= r.tail_bound + 5.0 * r.tail_sigma;
  return r;
}

}  // namespace liftkit

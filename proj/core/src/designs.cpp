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

#include "liftkit/designs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "liftkit/rng.hpp"
#include "liftkit/tensor.hpp"

namespace liftkit {

DesignEnsemble make_ensemble(int dim, int order_claim, std::vector<ComplexVec> vectors,
                             std::vector<double> weights, std::string label) {
  if (dim < 1) throw std::invalid_argument("design: dimension must be positive");
  if (order_claim < 0) throw std::invalid_argument("design: negative order claim");
  if (vectors.empty()) throw std::invalid_argument("design: empty ensemble");
  if (weights.size() != vectors.size())
    throw std::invalid_argument("design: weight count does not match vector count");
  double total = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim)
      throw std::invalid_argument("design: vector " + std::to_string(i) + " has wrong length");
    if (!is_unit(vectors[i]))
      throw std::invalid_argument("design: vector " + std::to_string(i) + " is not unit-norm");
    if (!(weights[i] >= 0.0))
      throw std::invalid_argument("design: weight " + std::to_string(i) + " is negative");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("design: weights sum to " + std::to_string(total));
  return {dim, order_claim, std::move(vectors), std::move(weights), std::move(label)};
}

DesignEnsemble make_uniform_ensemble(int dim, int order_claim, std::vector<ComplexVec> vectors,
                                     std::string label) {
  std::vector<double> weights(vectors.size(), 1.0 / static_cast<double>(vectors.size()));
  return make_ensemble(dim, order_claim, std::move(vectors), std::move(weights), std::move(label));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

DesignEnsemble mub_maximal(int d) {
  if (!is_prime(d)) throw std::invalid_argument("mub_maximal: d must be prime, got " + std::to_string(d));
  std::vector<ComplexVec> vectors;
  vectors.reserve(static_cast<std::size_t>(d) * (d + 1));
  for (int k = 0; k < d; ++k) vectors.push_back(ComplexVec::Unit(d, k));

  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 2) {
    const cplx i_unit(0.0, 1.0);
    for (cplx phase : {cplx(1.0), i_unit}) {
      for (double sign : {1.0, -1.0}) {
        ComplexVec v(2);
        v << s, sign * s * phase;
        vectors.push_back(v);
      }
    }
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        ComplexVec v(d);
        for (int j = 0; j < d; ++j) {
          // Exponent reduced mod d in integers before forming the root of unity.
          const long long e = (static_cast<long long>(a) * j * j + static_cast<long long>(b) * j) % d;
          const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / d;
          v(j) = s * cplx(std::cos(angle), std::sin(angle));
        }
        vectors.push_back(v);
      }
  }
  return make_uniform_ensemble(d, 2, std::move(vectors), "mub:" + std::to_string(d));
}

std::uint64_t stabilizer_count(int n) {
  std::uint64_t count = std::uint64_t{1} << n;
  for (int k = 1; k <= n; ++k) count *= (std::uint64_t{1} << k) + 1;
  return count;
}

namespace {

using PhaseKey = std::vector<long long>;

PhaseKey phase_key(const ComplexVec& v) {
  const ComplexVec c = canonical_phase(v);
  PhaseKey key(2 * c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    key[2 * i] = std::llround(c(i).real() * 1e8);
    key[2 * i + 1] = std::llround(c(i).imag() * 1e8);
  }
  return key;
}

void apply_h(ComplexVec& v, std::size_t bit) {
  const double s = 1.0 / std::numbers::sqrt2;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const cplx a = v(i);
    const cplx b = v(i | bit);
    v(i) = s * (a + b);
    v(i | bit) = s * (a - b);
  }
}

void apply_s(ComplexVec& v, std::size_t bit) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (i & bit) v(i) *= cplx(0.0, 1.0);
}

void apply_cnot(ComplexVec& v, std::size_t control, std::size_t target) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((i & control) && !(i & target)) std::swap(v(i), v(i | target));
}

}  // namespace

DesignEnsemble stabilizer_states(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("stabilizer_states: need 1 <= n <= 4, got " + std::to_string(n));
  const int d = 1 << n;
  std::vector<std::size_t> bits(n);
  for (int q = 0; q < n; ++q) bits[q] = std::size_t{1} << (n - 1 - q);  // qubit 0 is most significant

  std::vector<ComplexVec> found;
  std::set<PhaseKey> seen;
  std::deque<std::size_t> queue;
  const auto visit = [&](const ComplexVec& v) {
    if (seen.insert(phase_key(v)).second) {
      found.push_back(canonical_phase(v));
      queue.push_back(found.size() - 1);
    }
  };
  visit(ComplexVec::Unit(d, 0));
  while (!queue.empty()) {
    const ComplexVec cur = found[queue.front()];
    queue.pop_front();
    for (int q = 0; q < n; ++q) {
      ComplexVec h = cur;
      apply_h(h, bits[q]);
      visit(h);
      ComplexVec s = cur;
      apply_s(s, bits[q]);
      visit(s);
    }
    for (int c = 0; c < n; ++c)
      for (int t = 0; t < n; ++t) {
        if (c == t) continue;
        ComplexVec x = cur;
        apply_cnot(x, bits[c], bits[t]);
        visit(x);
      }
  }
  if (found.size() != stabilizer_count(n))
    throw std::logic_error("stabilizer enumeration found " + std::to_string(found.size()) + " states");
  for (auto& v : found) v.normalize();
  return make_uniform_ensemble(d, 3, std::move(found), "stabilizer:n=" + std::to_string(n));
}

DesignEnsemble projected_stabilizer_design(int d) {
  if (d < 2 || d > 16)
    throw std::invalid_argument("projected_stabilizer_design: need 2 <= d <= 16, got " +
                                std::to_string(d));
  int n = 1;
  while ((1 << n) < d) ++n;
  const DesignEnsemble full = stabilizer_states(n);
  if ((1 << n) == d) {
    DesignEnsemble out = full;
    out.label = "projected-stabilizer:d=" + std::to_string(d);
    return out;
  }
  std::vector<ComplexVec> vectors;
  std::vector<double> raw;
  for (const auto& w : full.vectors) {
    ComplexVec v = w.head(d);
    const double norm2 = v.squaredNorm();
    if (norm2 < 1e-12) continue;
    raw.push_back(norm2 * norm2 * norm2);
    vectors.push_back(v / std::sqrt(norm2));
  }
  double total = 0.0;
  for (double r : raw) total += r;
  for (double& r : raw) r /= total;
  return make_ensemble(d, 3, std::move(vectors), std::move(raw),
                       "projected-stabilizer:d=" + std::to_string(d));
}

DesignEnsemble haar_ensemble(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw std::invalid_argument("haar_ensemble: need d >= 1 and N >= 1");
  Rng rng(seed);
  std::vector<ComplexVec> vectors;
  vectors.reserve(n);
  for (int i = 0; i < n; ++i) {
    ComplexVec v(d);
    for (int j = 0; j < d; ++j) v(j) = rng.complex_normal();
    vectors.push_back(v / v.norm());
  }
  return make_uniform_ensemble(d, 0, std::move(vectors), "haar:seed=" + std::to_string(seed));
}

Eigen::MatrixXcd sym_moment(const DesignEnsemble& e, int t) {
  const auto dsym = static_cast<Eigen::Index>(dim_sym(e.dim, t));
  Eigen::MatrixXcd moment = Eigen::MatrixXcd::Zero(dsym, dsym);
  constexpr std::size_t kBlock = 512;
  for (std::size_t start = 0; start < e.size(); start += kBlock) {
    const std::size_t len = std::min(kBlock, e.size() - start);
    Eigen::MatrixXcd coords(dsym, static_cast<Eigen::Index>(len));
    Eigen::MatrixXcd scaled(dsym, static_cast<Eigen::Index>(len));
    for (std::size_t k = 0; k < len; ++k) {
      coords.col(k) = sym_coordinates(e.vectors[start + k], t);
      scaled.col(k) = e.weights[start + k] * coords.col(k);
    }
    moment.noalias() += scaled * coords.adjoint();
  }
  return moment;
}

namespace {

double pairwise_frame_potential(const DesignEnsemble& e, int t) {
  const auto n = static_cast<Eigen::Index>(e.size());
  Eigen::MatrixXcd w(e.dim, n);
  for (Eigen::Index i = 0; i < n; ++i) w.col(i) = e.vectors[i];
  const Eigen::Map<const RealVec> p(e.weights.data(), n);
  double total = 0.0;
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index start = 0; start < n; start += kBlock) {
    const Eigen::Index len = std::min(kBlock, n - start);
    const Eigen::MatrixXd overlaps = (w.middleCols(start, len).adjoint() * w).cwiseAbs2();
    const Eigen::MatrixXd powered = overlaps.array().pow(t).matrix();
    total += p.segment(start, len).dot(powered * p);
  }
  return total;
}

}  // namespace

DesignReport verify_design(const DesignEnsemble& e, int t, double tol) {
  if (t < 1) throw std::invalid_argument("verify_design: t must be >= 1");
  DesignReport report;
  report.order_tested = t;
  report.tolerance = tol;
  report.target_potential = 1.0 / static_cast<double>(dim_sym(e.dim, t));

  bool within_guard = true;
  try {
    tensor_side(e.dim, t);
  } catch (const std::length_error&) {
    within_guard = false;
  }
  constexpr std::size_t kPairwiseLimit = 4096;
  std::optional<Eigen::MatrixXcd> moment;
  if (within_guard || e.size() > kPairwiseLimit) moment = sym_moment(e, t);

  if (e.size() <= kPairwiseLimit)
    report.frame_potential = pairwise_frame_potential(e, t);
  else
    report.frame_potential = moment->squaredNorm();

  report.passed = std::abs(report.frame_potential - report.target_potential) <= tol;
  if (within_guard) {
    Eigen::MatrixXcd deviation = *moment;
    deviation.diagonal().array() -= report.target_potential;
    const HermMat dev(deviation);
    report.operator_deviation = schatten_norm(dev, SchattenOrder::operator_norm);
    report.passed = report.passed && *report.operator_deviation <= tol;
  }
  return report;
}

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t min_design_size(int d, int t) {
  if (d < 1 || t < 0) throw std::invalid_argument("min_design_size: bad arguments");
  const int hi = (t + 1) / 2;
  const int lo = t / 2;
  return binom(static_cast<std::uint64_t>(d) + hi - 1, hi) *
         binom(static_cast<std::uint64_t>(d) + lo - 1, lo);
}

}  // namespace liftkit

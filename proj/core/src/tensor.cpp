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

#include "liftkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "liftkit/rng.hpp"

namespace liftkit {

std::int64_t tensor_side(int dim, int order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("tensor_side: bad dimension or order");
  std::int64_t side = 1;
  for (int i = 0; i < order; ++i) {
    side *= dim;
    if (side > kMaxTensorSide)
      throw std::length_error("tensor oracle limited to d^k <= " + std::to_string(kMaxTensorSide) +
                              " (d=" + std::to_string(dim) + ", k=" + std::to_string(order) + ")");
  }
  return side;
}

std::uint64_t dim_sym(int dim, int order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("dim_sym: bad dimension or order");
  // binom(n, k) with n = d + k - 1, built incrementally so every step is exact.
  std::uint64_t result = 1;
  const std::uint64_t n = static_cast<std::uint64_t>(dim) + order - 1;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(order); ++i)
    result = result * (n - order + i) / i;
  return result;
}

namespace {

std::vector<int> digits_of(std::int64_t index, int dim, int order) {
  std::vector<int> digits(order);
  for (int j = order - 1; j >= 0; --j) {
    digits[j] = static_cast<int>(index % dim);
    index /= dim;
  }
  return digits;
}

std::int64_t index_of(std::span<const int> digits, int dim) {
  std::int64_t index = 0;
  for (int v : digits) index = index * dim + v;
  return index;
}

}  // namespace

TensorMat permutation_operator(int dim, std::span<const int> perm) {
  const int order = static_cast<int>(perm.size());
  const auto side = tensor_side(dim, order);
  TensorMat out{dim, order, Eigen::MatrixXcd::Zero(side, side)};
  std::vector<int> image(order);
  for (std::int64_t col = 0; col < side; ++col) {
    const auto digits = digits_of(col, dim, order);
    for (int j = 0; j < order; ++j) image[j] = digits[perm[j]];
    out.entries(index_of(image, dim), col) = 1.0;
  }
  return out;
}

TensorMat symmetrizer(int dim, int order) {
  const auto side = tensor_side(dim, order);
  TensorMat out{dim, order, Eigen::MatrixXcd::Zero(side, side)};
  std::vector<int> perm(order);
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0.0;
  do {
    out.entries += permutation_operator(dim, perm).entries;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.entries /= count;
  return out;
}

TensorMat kron(std::span<const HermMat> factors) {
  if (factors.empty()) throw std::invalid_argument("kron: no factors");
  const int dim = factors.front().dim();
  tensor_side(dim, static_cast<int>(factors.size()));
  Eigen::MatrixXcd acc = factors.front().matrix();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const auto& b = factors[f].matrix();
    if (b.rows() != dim) throw std::invalid_argument("kron: dimension mismatch");
    Eigen::MatrixXcd next(acc.rows() * dim, acc.cols() * dim);
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * dim, j * dim, dim, dim) = acc(i, j) * b;
    acc = std::move(next);
  }
  return {dim, static_cast<int>(factors.size()), std::move(acc)};
}

TensorMat tensor_power(const HermMat& a, int order) {
  std::vector<HermMat> factors(order, a);
  return kron(factors);
}

TensorMat multiply(const TensorMat& a, const TensorMat& b) {
  if (a.dim != b.dim || a.order != b.order) throw std::invalid_argument("multiply: shape mismatch");
  return {a.dim, a.order, a.entries * b.entries};
}

Eigen::MatrixXcd trace_out_tail(const TensorMat& t, int keep) {
  if (keep < 0 || keep > t.order) throw std::invalid_argument("trace_out_tail: bad keep");
  std::int64_t head = 1;
  for (int i = 0; i < keep; ++i) head *= t.dim;
  std::int64_t tail = 1;
  for (int i = keep; i < t.order; ++i) tail *= t.dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(head, head);
  for (std::int64_t r = 0; r < head; ++r)
    for (std::int64_t c = 0; c < head; ++c) {
      cplx s = 0.0;
      for (std::int64_t k = 0; k < tail; ++k) s += t.entries(r * tail + k, c * tail + k);
      out(r, c) = s;
    }
  return out;
}

Eigen::MatrixXcd ptrace_sym2_bruteforce(const HermMat& a, const HermMat& b) {
  const std::vector<HermMat> factors{a, b};
  return trace_out_tail(multiply(symmetrizer(a.dim(), 2), kron(factors)), 1);
}

Eigen::MatrixXcd ptrace_sym3_bruteforce(const HermMat& a, const HermMat& b, const HermMat& c) {
  const std::vector<HermMat> factors{a, b, c};
  return trace_out_tail(multiply(symmetrizer(a.dim(), 3), kron(factors)), 1);
}

Eigen::MatrixXcd ptrace_sym2_closed(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("ptrace_sym2_closed: dimension mismatch");
  return 0.5 * (b.trace() * a.matrix() + b.matrix() * a.matrix());
}

Eigen::MatrixXcd ptrace_sym3_closed(const HermMat& a, const HermMat& b, const HermMat& c) {
  if (a.dim() != b.dim() || a.dim() != c.dim())
    throw std::invalid_argument("ptrace_sym3_closed: dimension mismatch");
  const auto& A = a.matrix();
  const auto& B = b.matrix();
  const auto& C = c.matrix();
  const double tb = b.trace();
  const double tc = c.trace();
  const cplx tbc = (B * C).trace();
  return (A * (tb * tc) + B * A * tc + C * A * tb + A * tbc + C * B * A + B * C * A) / 6.0;
}

TensorMat design_moment_lhs(std::span<const ComplexVec> vectors, std::span<const double> weights,
                            int order) {
  if (vectors.empty()) throw std::invalid_argument("design_moment_lhs: empty ensemble");
  if (weights.size() != vectors.size())
    throw std::invalid_argument("design_moment_lhs: weight count mismatch");
  const int dim = static_cast<int>(vectors.front().size());
  const auto side = tensor_side(dim, order);
  TensorMat out{dim, order, Eigen::MatrixXcd::Zero(side, side)};
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    // Row-major Kronecker power of w.
    ComplexVec acc = ComplexVec::Ones(1);
    for (int f = 0; f < order; ++f) {
      ComplexVec next(acc.size() * dim);
      for (Eigen::Index r = 0; r < acc.size(); ++r) next.segment(r * dim, dim) = acc(r) * vectors[i];
      acc = std::move(next);
    }
    out.entries.noalias() += weights[i] * (acc * acc.adjoint());
  }
  return out;
}

ComplexVec sym_coordinates(const ComplexVec& w, int order) {
  const int dim = static_cast<int>(w.size());
  const auto n = dim_sym(dim, order);
  ComplexVec out(static_cast<Eigen::Index>(n));
  std::vector<int> combo(order, 0);  // non-decreasing index tuple
  std::vector<double> log_fact(order + 1, 0.0);
  for (int i = 1; i <= order; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    cplx prod = 1.0;
    double log_multinomial = log_fact[order];
    int run = 1;
    for (int j = 0; j < order; ++j) {
      prod *= w(combo[j]);
      if (j + 1 < order && combo[j + 1] == combo[j]) {
        ++run;
      } else {
        log_multinomial -= log_fact[run];
        run = 1;
      }
    }
    out(static_cast<Eigen::Index>(idx)) = std::sqrt(std::exp(log_multinomial)) * prod;
    // Advance to the next non-decreasing tuple.
    int j = order - 1;
    while (j >= 0 && combo[j] == dim - 1) --j;
    if (j < 0) break;
    const int v = combo[j] + 1;
    for (int q = j; q < order; ++q) combo[q] = v;
  }
  return out;
}

HermMat apply_pi_id(const HermMat& z) { return HermMat::identity(z.dim()) * z.trace(); }

bool pi_id_check(int dim, std::uint64_t seed, int trials, double tol) {
  Rng rng(seed);
  const double d = dim;
  for (int t = 0; t < trials; ++t) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    const HermMat z(g);
    const HermMat once = apply_pi_id(z) * (1.0 / d);
    const HermMat twice = apply_pi_id(once) * (1.0 / d);
    const double scale = std::max(1.0, schatten_norm(z, SchattenOrder::frobenius));
    if (schatten_norm(twice - once, SchattenOrder::frobenius) > tol * scale) return false;
    const double quad = frobenius_inner(z, apply_pi_id(z));
    const double norm2 = frobenius_inner(z, z);
    if (quad < -tol * norm2 || quad > d * norm2 * (1.0 + tol)) return false;
  }
  return true;
}

}  // namespace liftkit

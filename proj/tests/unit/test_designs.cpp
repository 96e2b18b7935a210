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

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liftkit/designs.hpp"
#include "liftkit/tensor.hpp"
#include "support.hpp"

using namespace liftkit;
using namespace liftkit::testing;
using Catch::Matchers::WithinAbs;

namespace {

double frame_potential_oracle(const DesignEnsemble& e, int t) {
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      total += e.weights[i] * e.weights[j] * std::pow(std::norm(e.vectors[i].dot(e.vectors[j])), t);
  return total;
}

double operator_deviation_oracle(const DesignEnsemble& e, int t) {
  const TensorMat lhs = design_moment_lhs(e.vectors, e.weights, t);
  const Eigen::MatrixXcd diff =
      lhs.entries - symmetrizer(e.dim, t).entries / static_cast<double>(dim_sym(e.dim, t));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool same_ray(const ComplexVec& a, const ComplexVec& b) { return std::abs(std::abs(a.dot(b)) - 1.0) < 1e-12; }

}  // namespace

TEST_CASE("ensemble validation", "[designs]") {
  std::vector<ComplexVec> v{ComplexVec::Unit(2, 0), ComplexVec::Unit(2, 1)};
  CHECK_NOTHROW(make_ensemble(2, 1, v, {0.5, 0.5}, "ok"));
  CHECK_THROWS_AS(make_ensemble(2, 1, v, {0.5, 0.4}, "bad sum"), std::invalid_argument);
  CHECK_THROWS_AS(make_ensemble(2, 1, v, {1.5, -0.5}, "negative"), std::invalid_argument);
  CHECK_THROWS_AS(make_ensemble(2, 1, {}, {}, "empty"), std::invalid_argument);
  CHECK_THROWS_AS(make_ensemble(2, 1, {2.0 * ComplexVec::Unit(2, 0)}, {1.0}, "norm"), std::invalid_argument);
  CHECK_THROWS_AS(make_ensemble(3, 1, v, {0.5, 0.5}, "dim"), std::invalid_argument);
  const DesignEnsemble u = make_uniform_ensemble(2, 1, v, "uniform");
  CHECK(u.weights[0] == 1.0 / 2.0);
}

TEST_CASE("maximal MUB sets", "[designs]") {
  for (int d : {2, 3, 5, 7}) {
    const DesignEnsemble e = mub_maximal(d);
    REQUIRE(static_cast<int>(e.size()) == d * (d + 1));
    CHECK(e.order_claim == 2);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; b <= d; ++b)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const double ov = std::norm(e.vectors[a * d + i].dot(e.vectors[b * d + j]));
            const double expect = a != b ? 1.0 / d : (i == j ? 1.0 : 0.0);
            CHECK_THAT(ov, WithinAbs(expect, 1e-10));
          }
    const DesignReport r = verify_design(e, 2, 1e-10);
    CHECK(r.passed);
    CHECK(static_cast<std::uint64_t>(e.size()) >= min_design_size(d, 2));
  }
  CHECK(verify_design(mub_maximal(3), 2).passed);
  CHECK_THROWS_AS(mub_maximal(4), std::invalid_argument);
  CHECK_THROWS_AS(mub_maximal(1), std::invalid_argument);
}

TEST_CASE("stabilizer states", "[designs]") {
  CHECK(stabilizer_count(1) == 6);
  CHECK(stabilizer_count(2) == 60);
  CHECK(stabilizer_count(3) == 1080);
  CHECK(stabilizer_count(4) == 36720);

  // n = 1: the six Pauli eigenstates.
  const DesignEnsemble s1 = stabilizer_states(1);
  REQUIRE(s1.size() == 6);
  const double h = 1.0 / std::numbers::sqrt2;
  const cplx i_unit(0.0, 1.0);
  std::vector<ComplexVec> octahedron;
  for (auto [a, b] : std::vector<std::pair<cplx, cplx>>{{1, 0}, {0, 1}, {h, h}, {h, -h}, {h, h * i_unit}, {h, -h * i_unit}}) {
    ComplexVec v(2);
    v << a, b;
    octahedron.push_back(v);
  }
  for (const auto& o : octahedron) {
    int matches = 0;
    for (const auto& v : s1.vectors) matches += same_ray(o, v);
    CHECK(matches == 1);
  }

  for (int n = 1; n <= 3; ++n) {
    const DesignEnsemble s = stabilizer_states(n);
    CHECK(s.size() == stabilizer_count(n));
    // No two states coincide up to phase.
    if (n <= 2)
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) CHECK_FALSE(same_ray(s.vectors[i], s.vectors[j]));
    for (int t = 1; t <= 3; ++t) {
      const DesignReport r = verify_design(s, t, 1e-10);
      CHECK(r.passed);
      REQUIRE(r.operator_deviation.has_value());
      CHECK_THAT(*r.operator_deviation, WithinAbs(operator_deviation_oracle(s, t), 1e-12));
      CHECK_THAT(r.frame_potential, WithinAbs(frame_potential_oracle(s, t), 1e-12));
    }
    CHECK(s.size() >= min_design_size(1 << n, 3));
  }
  CHECK_THROWS_AS(stabilizer_states(0), std::invalid_argument);
  CHECK_THROWS_AS(stabilizer_states(5), std::invalid_argument);
}

TEST_CASE("four-qubit stabilizer states", "[designs][slow]") {
  const DesignEnsemble s = stabilizer_states(4);
  CHECK(s.size() == 36720);
  for (const auto& v : s.vectors) REQUIRE(is_unit(v));
}

TEST_CASE("projected stabilizer designs", "[designs]") {
  const DesignEnsemble p4 = projected_stabilizer_design(4);
  const DesignEnsemble s2 = stabilizer_states(2);
  REQUIRE(p4.size() == s2.size());
  for (std::size_t i = 0; i < p4.size(); ++i) {
    CHECK((p4.vectors[i] - s2.vectors[i]).norm() == 0.0);
    CHECK(p4.weights[i] == 1.0 / 60.0);
  }
  for (int d : {3, 5, 6, 7}) {
    const DesignEnsemble p = projected_stabilizer_design(d);
    CHECK(p.dim == d);
    const DesignReport r2 = verify_design(p, 2, 1e-8);
    CHECK(r2.passed);
    const DesignReport r3 = verify_design(p, 3, 1e-8);
    INFO("d=" << d << " t=3 frame potential " << r3.frame_potential << " target " << r3.target_potential);
    CHECK(r3.passed);
    CHECK_THAT(r3.frame_potential, WithinAbs(frame_potential_oracle(p, 3), 1e-12));
  }
  CHECK_THROWS_AS(projected_stabilizer_design(1), std::invalid_argument);
  CHECK_THROWS_AS(projected_stabilizer_design(17), std::invalid_argument);
}

TEST_CASE("Haar ensembles", "[designs]") {
  const DesignEnsemble a = haar_ensemble(3, 50, 9);
  const DesignEnsemble b = haar_ensemble(3, 50, 9);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a.vectors[i] - b.vectors[i]).norm() == 0.0);
  CHECK(a.order_claim == 0);
  CHECK(haar_ensemble(4, 1, 1).size() == 1);

  // N = 10^4 in d = 2: first frame potential close to 1/d.
  const DesignEnsemble big = haar_ensemble(2, 10000, 21);
  const DesignReport r = verify_design(big, 1, 1e-8);
  CHECK(std::abs(r.frame_potential - 0.5) <= 0.02);
  CHECK(r.frame_potential >= r.target_potential - 1e-12);
  CHECK_THAT(r.frame_potential, WithinAbs(sym_moment(big, 1).squaredNorm(), 1e-12));

  for (int t = 1; t <= 3; ++t) {
    const DesignReport rt = verify_design(haar_ensemble(3, 40, 100 + t), t);
    CHECK(rt.frame_potential >= rt.target_potential - 1e-12);
  }
}

TEST_CASE("verify_design examples", "[designs]") {
  std::vector<ComplexVec> basis{ComplexVec::Unit(2, 0), ComplexVec::Unit(2, 1)};
  const DesignEnsemble std_basis = make_uniform_ensemble(2, 1, basis, "basis");
  CHECK(verify_design(std_basis, 1).passed);
  const DesignReport r2 = verify_design(std_basis, 2);
  CHECK_THAT(r2.frame_potential, WithinAbs(0.5, 1e-15));
  CHECK_THAT(r2.target_potential, WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_FALSE(r2.passed);
  const DesignReport rm = verify_design(mub_maximal(2), 2);
  CHECK_THAT(rm.frame_potential, WithinAbs(1.0 / 3.0, 1e-14));
  CHECK(rm.passed);
  // MUB sets are 2-designs only.
  CHECK_FALSE(verify_design(mub_maximal(3), 3).passed);
  CHECK_THROWS_AS(verify_design(std_basis, 0), std::invalid_argument);
  // Beyond the tensor guard the operator deviation is absent.
  CHECK_FALSE(verify_design(haar_ensemble(17, 5, 1), 3).operator_deviation.has_value());
}

TEST_CASE("frame potential via the moment route for large ensembles", "[designs]") {
  const DesignEnsemble big = haar_ensemble(2, 5000, 77);
  const DesignReport r = verify_design(big, 2);
  CHECK_THAT(r.frame_potential, WithinAbs(frame_potential_oracle(big, 2), 1e-10));
}

TEST_CASE("minimum design size", "[designs]") {
  CHECK(min_design_size(2, 2) == 4);
  CHECK(min_design_size(4, 3) == 40);
  for (int d = 1; d < 8; ++d) CHECK(min_design_size(d, 1) == static_cast<std::uint64_t>(d));
}

TEST_CASE("design file round trip", "[designs][io]") {
  const DesignEnsemble p = projected_stabilizer_design(3);
  std::stringstream buf;
  write_design(buf, p);
  const std::string text = buf.str();
  CHECK(text.rfind("LIFTKIT-DESIGN v1\n", 0) == 0);
  const DesignEnsemble q = read_design(buf);
  REQUIRE(q.size() == p.size());
  CHECK(q.dim == p.dim);
  CHECK(q.order_claim == p.order_claim);
  CHECK(q.label == p.label);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(q.weights[i] == p.weights[i]);
    CHECK((q.vectors[i] - p.vectors[i]).norm() == 0.0);
  }
  std::stringstream again;
  write_design(again, q);
  CHECK(again.str() == text);

  std::stringstream bad("LIFTKIT-DESIGN v2\n2 1 1\n1 1 0 0 0\n");
  CHECK_THROWS_AS(read_design(bad), std::invalid_argument);
  std::stringstream short_file("LIFTKIT-DESIGN v1\n2 2 1\n0.5 1 0 0 0\n");
  CHECK_THROWS_AS(read_design(short_file), std::invalid_argument);
}

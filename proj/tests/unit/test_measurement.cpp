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

#include <cmath>
#include <sstream>

#include "liftkit/measurement.hpp"
#include "support.hpp"

using namespace liftkit;
using namespace liftkit::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("sampling follows the ensemble weights", "[measurement]") {
  const DesignEnsemble e = projected_stabilizer_design(3);
  const int m = 200000;
  Rng rng(5);
  const auto idx = sample_indices(e, m, rng);
  std::vector<double> counts(e.size(), 0.0);
  for (auto i : idx) counts[i] += 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double p = e.weights[i];
    const double sigma = std::sqrt(p * (1.0 - p) / m);
    CHECK(std::abs(counts[i] / m - p) <= 5.0 * sigma + 1e-12);
  }
  const auto one = sample_vectors(e, 1, 3);
  REQUIRE(one.size() == 1);
  bool member = false;
  for (const auto& v : e.vectors) member = member || (v - one[0]).norm() == 0.0;
  CHECK(member);

  Rng r1(42), r2(42);
  CHECK(sample_indices(e, 100, r1) == sample_indices(e, 100, r2));
  CHECK_THROWS_AS(sample_vectors(e, 0, 1), std::invalid_argument);
}

TEST_CASE("measure", "[measurement]") {
  Rng rng(7);
  const ComplexVec x = random_unit(4, rng);
  ComplexVec orth = random_unit(4, rng);
  orth -= x * x.dot(orth);
  orth.normalize();
  const MeasurementRecord rec = measure(x, {x, orth, random_unit(4, rng)}, 9, "probe");
  CHECK_THAT(rec.amplitudes[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(rec.amplitudes[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(rec.intensity, WithinAbs(1.0, 1e-15));
  for (double y : rec.amplitudes) CHECK((y >= 0.0 && y <= rec.intensity + 1e-15));

  const MeasurementRecord rotated = measure(std::polar(1.0, 2.1) * x, rec.vectors);
  for (int i = 0; i < rec.m(); ++i) CHECK_THAT(rotated.amplitudes[i], WithinAbs(rec.amplitudes[i], 1e-15));
  CHECK_THROWS_AS(measure(2.0 * x, rec.vectors), std::invalid_argument);
}

TEST_CASE("measurement operator and its adjoint", "[measurement]") {
  Rng rng(11);
  const int d = 5;
  std::vector<ComplexVec> a;
  for (int i = 0; i < 12; ++i) a.push_back(random_unit(d, rng));
  const ComplexVec x = random_unit(d, rng);
  const RealVec ax = apply_A(a, lift(x));
  const MeasurementRecord rec = measure(x, a);
  for (int i = 0; i < 12; ++i) CHECK_THAT(ax(i), WithinAbs(rec.amplitudes[i], 1e-14));
  CHECK((apply_A(a, HermMat::identity(d)).array() - 1.0).abs().maxCoeff() < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const HermMat z = random_herm(d, rng);
    RealVec u(12);
    for (int i = 0; i < 12; ++i) u(i) = rng.normal();
    CHECK_THAT(apply_A(a, z).dot(u), WithinAbs(frobenius_inner(z, apply_A_adjoint(a, u, d)), 1e-12));
    const RealVec az = apply_A(a, z);
    for (int i = 0; i < 12; ++i)
      CHECK_THAT(az(i), WithinAbs((lift(a[i]).matrix() * z.matrix()).trace().real(), 1e-12));
    CHECK(apply_A(a, random_psd(d, rng)).minCoeff() >= 0.0);
    // m^{-1} ||A(Z)||^2 <= ||Z||_2^2
    CHECK(az.squaredNorm() / 12.0 <= z.matrix().squaredNorm());
  }
  RealVec e3 = RealVec::Zero(12);
  e3(3) = 1.0;
  CHECK(max_abs(apply_A_adjoint(a, e3, d).matrix() - lift(a[3]).matrix()) < 1e-15);
  CHECK(max_abs(apply_A_adjoint(a, RealVec::Zero(12), d).matrix()) == 0.0);
  CHECK_THROWS_AS(apply_A_adjoint(a, RealVec::Zero(3), d), std::invalid_argument);
}

TEST_CASE("sampling operator R", "[measurement]") {
  Rng rng(13);
  const int d = 3;
  std::vector<ComplexVec> a;
  for (int i = 0; i < 9; ++i) a.push_back(random_unit(d, rng));
  for (int trial = 0; trial < 10; ++trial) {
    const HermMat z = random_herm(d, rng);
    const HermMat via_adjoint = apply_A_adjoint(a, apply_A(a, z), d) * ((d + 1.0) * d / 9.0);
    CHECK(max_abs(apply_R(a, z).matrix() - via_adjoint.matrix()) < 1e-12);
    const HermMat w = random_herm(d, rng);
    const double s = rng.normal(), t = rng.normal();
    CHECK(max_abs(apply_R(a, z * s + w * t).matrix() - (apply_R(a, z) * s + apply_R(a, w) * t).matrix()) < 1e-12);
  }
  CHECK(max_abs(apply_R(a, HermMat::zero(d)).matrix()) == 0.0);

  // Whole 2-design used once: R Z = Z + tr(Z) Id.
  const DesignEnsemble mub = mub_maximal(3);
  for (int trial = 0; trial < 10; ++trial) {
    const HermMat z = random_herm(3, rng);
    const HermMat expect = z + HermMat::identity(3) * z.trace();
    CHECK(max_abs(apply_R(mub.vectors, z).matrix() - expect.matrix()) < 1e-12);
  }
}

TEST_CASE("near-isotropy of exact 2-designs", "[measurement]") {
  std::vector<DesignEnsemble> designs{mub_maximal(2), mub_maximal(3), mub_maximal(5), mub_maximal(7),
                                      stabilizer_states(1), stabilizer_states(2), stabilizer_states(3),
                                      projected_stabilizer_design(3), projected_stabilizer_design(5),
                                      projected_stabilizer_design(6)};
  Rng rng(17);
  for (const auto& e : designs) {
    INFO(e.label);
    CHECK(isotropy_deviation_exact(e) <= 1e-10);
    CHECK(isotropy_residual_exact(e, random_herm(e.dim, rng)) <= 1e-10);
    const HermMat r_id = expected_R(e, HermMat::identity(e.dim));
    CHECK(max_abs(r_id.matrix() - (e.dim + 1.0) * Eigen::MatrixXcd::Identity(e.dim, e.dim)) < 1e-10);
  }
  // A single basis is not a 2-design.
  std::vector<ComplexVec> basis{ComplexVec::Unit(2, 0), ComplexVec::Unit(2, 1)};
  CHECK(isotropy_deviation_exact(make_uniform_ensemble(2, 1, basis, "basis")) > 0.1);
}

TEST_CASE("sampled isotropy residual decays like 1/sqrt(trials m)", "[measurement]") {
  const DesignEnsemble e = stabilizer_states(2);
  double small = 0.0, large = 0.0;
  const int seeds = 24;
  for (int s = 0; s < seeds; ++s) {
    const double a = isotropy_residual(e, 10, 20, 1000 + s);
    const double b = isotropy_residual(e, 40, 20, 1000 + s);
    small += a * a;
    large += b * b;
  }
  const double ratio = std::sqrt(large / small);
  INFO("rms ratio for 4x trials: " << ratio);
  CHECK(ratio > 0.25);
  CHECK(ratio < 0.75);
}

TEST_CASE("truncation flags", "[measurement]") {
  Rng rng(19);
  // gamma = 0 with d >= 5: threshold 5t exceeds every overlap.
  const ComplexVec x6 = random_unit(6, rng), z6 = random_unit(6, rng);
  std::vector<ComplexVec> a6;
  for (int i = 0; i < 20; ++i) a6.push_back(random_unit(6, rng));
  const auto all = truncation_flags(x6, z6, a6, 0.0, 1);
  for (std::size_t i = 0; i < a6.size(); ++i) CHECK((all.e_flags[i] && all.g_flags[i]));
  const HermMat q = random_herm(6, rng);
  CHECK(max_abs(apply_R_truncated(a6, all, q).matrix() - apply_R(a6, q).matrix()) < 1e-14);
  TruncationFlags none = all;
  std::fill(none.e_flags.begin(), none.e_flags.end(), false);
  CHECK(max_abs(apply_R_truncated(a6, none, q).matrix()) == 0.0);

  // a_i = x, gamma = 1, t = 3, d = 16: 1 >= 15/16 so E_i fails.
  const ComplexVec x = random_unit(16, rng);
  const auto flags = truncation_flags(x, x, std::vector<ComplexVec>{x}, 1.0, 3);
  CHECK_FALSE(flags.e_flags[0]);
  CHECK_THAT(truncation_threshold(16, 3, 1.0), WithinAbs(15.0 / 16.0, 1e-15));
  CHECK_THROWS_AS(truncation_flags(x, x, std::vector<ComplexVec>{x}, 1.5, 3), std::invalid_argument);

  // Tail and bias bounds on an exact 3-design.
  const DesignEnsemble e = stabilizer_states(3);
  for (double gamma : {0.2, 1.0 / 3.0, 0.6, 1.0}) {
    const ComplexVec xs = random_unit(8, rng);
    const ComplexVec zs = random_unit(8, rng);
    const MomentReport mr = moment_tail_experiment(e, xs, 3, gamma, 20000, 23);
    CHECK(mr.tail_ok);
    CHECK(truncation_bias_exact(e, xs, zs, gamma, 3) <= truncation_bias_bound(8, 3, gamma) + 1e-12);
  }
}

TEST_CASE("moment tail experiment", "[measurement]") {
  const DesignEnsemble mub = mub_maximal(2);
  const MomentReport r = moment_tail_experiment(mub, ComplexVec::Unit(2, 0), 2, 0.0, 1000, 1);
  CHECK_THAT(r.moments[0].exact, WithinAbs(0.5, 1e-15));
  CHECK(r.mean_ok);
  CHECK(r.moments[1].exact <= 2.0 / 4.0 + 1e-15);
  CHECK(r.moments_ok);

  Rng rng(29);
  for (const auto& e : {stabilizer_states(2), projected_stabilizer_design(5), mub_maximal(5)}) {
    const ComplexVec x = random_unit(e.dim, rng);
    const MomentReport mr = moment_tail_experiment(e, x, e.order_claim, 1.0 - 2.0 / 3.0, 50000, 31);
    INFO(e.label);
    CHECK(mr.mean_ok);
    CHECK(mr.moments_ok);
    CHECK(mr.tail_ok);
    // Exact t-design moments: E[xi^k] = k! (d-1)! / (d+k-1)!.
    double expect = 1.0;
    for (int k = 1; k <= e.order_claim; ++k) {
      expect *= static_cast<double>(k) / (e.dim + k - 1);
      CHECK_THAT(mr.moments[k - 1].exact, WithinAbs(expect, 1e-12));
    }
  }
  CHECK_THAT(tail_probability_bound(8, 3, 1.0 / 3.0), WithinAbs(std::pow(4.0, -3) * std::pow(8.0, -2.0), 1e-15));
}

TEST_CASE("record CSV round trip", "[measurement][io]") {
  Rng rng(37);
  const DesignEnsemble e = stabilizer_states(2);
  const ComplexVec x = random_unit(4, rng);
  const MeasurementRecord rec = measure(x, sample_vectors(e, 7, 4), 4, "stab,n=2");
  std::stringstream buf;
  write_record_csv(buf, rec);
  const std::string text = buf.str();
  CHECK(text.rfind("d,m,seed,label\n4,7,4,stab;n=2\ni,re_0,re_1,re_2,re_3,im_0,im_1,im_2,im_3,y\n0,,,,,,,,,", 0) == 0);
  const MeasurementRecord back = read_record_csv(buf);
  CHECK(back.signal_dim == 4);
  CHECK(back.m() == 7);
  CHECK(back.seed == 4);
  CHECK(back.intensity == rec.intensity);
  for (int i = 0; i < 7; ++i) {
    CHECK(back.amplitudes[i] == rec.amplitudes[i]);
    CHECK((back.vectors[i] - rec.vectors[i]).norm() == 0.0);
  }
  std::stringstream bad("d,m,seed\n");
  CHECK_THROWS_AS(read_record_csv(bad), std::invalid_argument);
}
